#include "fnlslab/verify.hpp"

#include <cmath>
#include <functional>
#include <numbers>

#include "fnlslab/analysis.hpp"
#include "fnlslab/highlow.hpp"
#include "fnlslab/modulation.hpp"
#include "fnlslab/nonlinearity.hpp"
#include "fnlslab/propagator.hpp"
#include "fnlslab/sampling.hpp"
#include "fnlslab/solver.hpp"

namespace fnls {

namespace {

struct Harness {
    std::vector<CheckResult>& out;
    std::string module;
    std::string filter;
    int threads;
    std::uint64_t seed;

    bool active() const { return filter.empty() || filter == module; }

    void bounded(const std::string& name, double observed, double bound,
                 const std::string& detail = "") {
        CheckResult r;
        r.module = module;
        r.name = name;
        r.observed = observed;
        r.bound = bound;
        r.pass = observed <= bound;
        r.detail = detail;
        out.push_back(r);
    }

    void truth(const std::string& name, bool pass,
               const std::string& detail = "") {
        CheckResult r;
        r.module = module;
        r.name = name;
        r.pass = pass;
        r.observed = pass ? 1.0 : 0.0;
        r.bound = 1.0;
        r.detail = detail;
        out.push_back(r);
    }
};

void check_grid(Harness& h) {
    if (!h.active()) return;
    auto g = make_grid(2, 4.0, 64);
    double worst_rt = 0.0, worst_pv = 0.0;
    for (int s = 0; s < 50; ++s) {
        Field f = random_band_limited(g, h.seed, s, 0.5);
        Field rt = inverse_transform(forward_transform(f));
        worst_rt = std::max(worst_rt, l2_norm(rt - f) / l2_norm(f));
        Field spec = forward_transform(f);
        double e1 = l2_norm(f);
        double e2 = 0.0;
        for (const cplx& v : spec.values) e2 += std::norm(v);
        e2 = std::sqrt(e2 * std::pow(g->dxi(), 2));
        worst_pv = std::max(worst_pv,
                            std::abs(e1 * e1 - e2 * e2) / (e1 * e1));
    }
    h.bounded("round_trip", worst_rt, 1e-12);
    h.bounded("parseval", worst_pv, 1e-12);

    Field gauss = radial_profile(g, RadialKind::gaussian, {1.0, 1.0, 0.0});
    Field spec = forward_transform(gauss);
    std::vector<int> idx(2);
    double worst_pair = 0.0;
    for (std::size_t i = 0; i < g->size(); ++i) {
        g->unflatten(i, idx.data());
        double x2 = 0.0;
        for (int a = 0; a < 2; ++a) {
            double xi = g->frequency(idx[a]);
            x2 += xi * xi;
        }
        worst_pair = std::max(
            worst_pair,
            std::abs(spec.values[i] - std::exp(-std::numbers::pi * x2)));
    }
    h.bounded("gaussian_pair", worst_pair, 1e-8);
}

void check_propagator(Harness& h) {
    if (!h.active()) return;
    auto g = make_grid(2, 4.0, 64);
    Dispersion beta(1.5);
    double worst_uni = 0.0, worst_group = 0.0;
    for (int s = 0; s < 20; ++s) {
        Field f = random_band_limited(g, h.seed + 1, s, 0.5);
        double t = -1.0 + 0.1 * s;
        if (t == 0.0) t = 0.05;
        Field u = apply_propagator(f, beta, t);
        worst_uni = std::max(worst_uni,
                             std::abs(l2_norm(u) - l2_norm(f)) / l2_norm(f));
        worst_group =
            std::max(worst_group, group_property_check(f, beta, 0.1, 0.2));
    }
    h.bounded("unitarity", worst_uni, 1e-12);
    h.bounded("group_law", worst_group, 1e-11);

    ModulationPartition part = build_partition(g);
    Field f = random_band_limited(g, h.seed + 2, 0, 0.5);
    std::vector<int> k = {1, -1};
    Field a = part.box_piece(apply_propagator(f, beta, 0.4), k);
    Field b = apply_propagator(part.box_piece(f, k), beta, 0.4);
    h.bounded("box_commutation", l2_norm(a - b) / l2_norm(f), 1e-11);

    double worst_mod = 0.0;
    for (int s = 0; s < 4; ++s) {
        Field r = random_band_limited(g, h.seed + 3, s, 0.5);
        for (double t : {0.5, 2.0}) {
            worst_mod = std::max(
                worst_mod, measure_modulation_bound(
                               r, beta, t, part, ModNormSpec(4.0, 4.0 / 3.0),
                               h.threads));
        }
    }
    h.bounded("modulation_bound", worst_mod, modulation_bound_ceiling());
    double iso = measure_modulation_bound(f, beta, 1.5, part,
                                          ModNormSpec(2.0, 2.0), h.threads);
    h.bounded("m22_isometry", std::abs(iso - 1.0), 1e-10);
}

void check_modulation(Harness& h) {
    if (!h.active()) return;
    auto g = make_grid(2, 4.0, 64);
    ModulationPartition part = build_partition(g);
    double worst_sum = 0.0;
    for (std::size_t i = 0; i < g->size(); i += 7) {
        double sum = 0.0;
        for (std::size_t ord = 0; ord < part.piece_count(); ++ord)
            sum += part.sigma_value(part.piece_index(ord), i);
        worst_sum = std::max(worst_sum, std::abs(sum - 1.0));
    }
    h.bounded("partition_of_unity", worst_sum, 1e-12);

    Field f = random_band_limited(g, h.seed + 4, 0, 0.5);
    Field sum(g);
    for (std::size_t ord = 0; ord < part.piece_count(); ++ord) {
        Field piece = part.box_piece(f, part.piece_index(ord));
        for (std::size_t i = 0; i < sum.size(); ++i)
            sum.values[i] += piece.values[i];
    }
    h.bounded("reconstruction", l2_norm(sum - f) / l2_norm(f), 1e-11);

    bool mono = true;
    for (int s = 0; s < 10; ++s) {
        Field r = random_band_limited(g, h.seed + 5, s, 0.5);
        double n1 = mod_norm(r, part, ModNormSpec(3.0, 1.0), h.threads);
        double n2 = mod_norm(r, part, ModNormSpec(3.0, 2.0), h.threads);
        double n3 = mod_norm(r, part, ModNormSpec(3.0, 4.0), h.threads);
        mono = mono && n2 <= n1 * (1 + 1e-12) && n3 <= n2 * (1 + 1e-12);
    }
    h.truth("lq_monotonicity", mono);

    // plane wave touches at most 2^n pieces
    Field pw(g);
    std::vector<int> idx(2);
    for (std::size_t i = 0; i < g->size(); ++i) {
        g->unflatten(i, idx.data());
        pw.values[i] = std::polar(
            1.0, 2.0 * std::numbers::pi *
                     (0.625 * g->coordinate(idx[0]) +
                      1.25 * g->coordinate(idx[1])));
    }
    int nonzero = 0;
    for (std::size_t ord = 0; ord < part.piece_count(); ++ord)
        if (l2_norm(part.box_piece(pw, part.piece_index(ord))) >
            1e-9 * l2_norm(pw))
            ++nonzero;
    h.truth("plane_wave_locality", nonzero <= 4,
            "pieces touched: " + std::to_string(nonzero));
}

void check_nonlinearity(Harness& h) {
    if (!h.active()) return;
    auto g = make_grid(2, 4.0, 64);
    Field u = random_band_limited(g, h.seed + 6, 0, 0.4);
    cplx phase = std::polar(1.0, 0.777);
    Field pu = power_nl(scaled(u, phase), 1.4, 1);
    Field up = scaled(power_nl(u, 1.4, 1), phase);
    h.bounded("gauge_covariance", l2_norm(pu - up) / l2_norm(up), 1e-12);

    cplx q = inner(hartree_nl(u, 1.0), u);
    h.bounded("hartree_form_real", std::abs(q.imag()) / q.real(), 1e-10);
    h.truth("hartree_form_positive", q.real() > 0.0);
    h.bounded("riesz_constant_2_1", std::abs(riesz_constant(2, 1.0) - 1.0),
              1e-12);

    Field v = random_band_limited(g, h.seed + 6, 1, 0.4);
    Field w = random_band_limited(g, h.seed + 6, 2, 0.4);
    Field split = hartree_difference(u, v, w, 1.0);
    Field direct = hartree_nl(u + v, 1.0) - hartree_nl(u + w, 1.0);
    h.bounded("hartree_split_identity",
              l2_norm(split - direct) / l2_norm(direct), 1e-10);

    auto eng = engine_for(h.seed + 7, 0);
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::uniform_real_distribution<double> mag(0.0, 3.0);
    double worst = 0.0;
    for (int s = 0; s < 10000; ++s) {
        cplx a = std::polar(mag(eng), gauss(eng));
        cplx b = std::polar(mag(eng), gauss(eng));
        cplx c = std::polar(mag(eng), gauss(eng));
        if (std::abs(b - c) < 1e-12) continue;
        cplx diff = (a + b) * std::abs(a + b) - (a + c) * std::abs(a + c);
        double bound =
            (std::abs(a) + std::abs(b) + std::abs(c)) * std::abs(b - c);
        if (bound > 0.0) worst = std::max(worst, std::abs(diff) / bound);
    }
    h.bounded("difference_bound_alpha1", worst, 2.5);
}

void check_solver(Harness& h) {
    if (!h.active()) return;
    auto g = make_grid(2, 4.0, 64);
    EquationSpec eq;
    eq.n = 2;
    eq.beta = 1.5;
    eq.alpha = 1.0;
    eq.sign = -1;
    Field u0 = radial_profile(g, RadialKind::gaussian, {0.5, 1.0, 0.0});

    Trajectory traj = evolve_split_step(u0, eq, 1e-3, 200, 200);
    double m0 = l2_norm(u0), m1 = l2_norm(traj.states.back());
    h.bounded("split_step_mass", std::abs(m1 * m1 - m0 * m0) / (m0 * m0),
              1e-10);

    EquationSpec lin = eq;
    lin.coupling = 0.0;
    PicardResult plin = picard_local_solve(u0, lin, 0.5);
    h.truth("picard_linear_one_iteration",
            plin.converged && plin.iterations == 1);

    PicardResult pr = picard_local_solve(u0, eq, 0.25);
    bool contracting = pr.converged;
    for (double r : pr.ratios) contracting = contracting && r < 1.0;
    h.truth("picard_contraction", contracting);

    PicardResult half = picard_local_solve(u0, eq, 0.125);
    h.truth("picard_ratio_shrinks_with_window",
            half.contraction_ratio < pr.contraction_ratio);

    WindowInputs in;
    in.data_norm = 4.0;
    in.constant = 1.0;
    double T = existence_window(in, eq, WindowRule::tchoice).T;
    h.bounded("tchoice_example", std::abs(T - 1.0 / 64.0), 1e-14);
}

void check_highlow(Harness& h) {
    if (!h.active()) return;
    auto g = make_grid(2, 4.0, 64);
    ModulationPartition part = build_partition(g);
    EquationSpec eq;
    eq.n = 2;
    eq.beta = 1.5;
    eq.alpha = 1.0;
    eq.sign = -1;
    Field u = radial_mix(g, {{1.0, 2.0, 0.0}, {0.4, 0.6, 0.0}});
    SplitResult s = split_data(u, 2.2, 3.0, 4.0, part, h.threads);
    h.bounded("split_recombination", l2_norm(s.low + s.high - u) / l2_norm(u),
              1e-11);
    h.truth("split_target_met",
            s.high_mod <= s.target_high_mod * (1.0 + 1e-12));

    double T = 0.2;
    WindowMesh mesh = WindowMesh::uniform(T, 16);
    PicardResult v = picard_local_solve(s.low, eq, T);
    Field zero_psi(g);
    InteractionResult w0 =
        solve_interaction(v.trajectory.states, zero_psi, eq, mesh);
    double wmax = 0.0;
    for (const Field& f : w0.w.states) wmax = std::max(wmax, l2_norm(f));
    h.bounded("interaction_zero_psi", wmax, 0.0);

    GammaRangeReport rep = check_gamma_range(eq, 2.2);
    h.truth("gamma_range_consistency", rep.consistent);
}

void check_analysis(Harness& h) {
    if (!h.active()) return;
    auto q34 = admissible_q(4.0, 1.5, 2);
    h.truth("admissible_34", q34.has_value() && std::abs(*q34 - 3.0) < 1e-14);
    h.truth("endpoint_excluded", !admissible_q(2.0, 1.5, 2).has_value());

    auto g3 = make_grid(3, 4.0, 16);
    std::vector<Field> fam;
    for (int s = 0; s < 3; ++s) fam.push_back(random_radial(g3, h.seed + 8, s));
    AdmissiblePair pair{std::numeric_limits<double>::infinity(), 2.0};
    StrichartzStats st =
        strichartz_homogeneous(fam, 1.5, pair, 1.0, 9, h.threads);
    h.bounded("linf_l2_isometry", std::abs(st.max_ratio - 1.0), 1e-10);
}

}  // namespace

std::vector<CheckResult> run_verify(const std::string& filter, int threads,
                                    std::uint64_t seed) {
    std::vector<CheckResult> out;
    Harness h{out, "", filter, threads, seed};
    h.module = "grid";
    check_grid(h);
    h.module = "propagator";
    check_propagator(h);
    h.module = "modulation";
    check_modulation(h);
    h.module = "nonlinearity";
    check_nonlinearity(h);
    h.module = "solver";
    check_solver(h);
    h.module = "highlow";
    check_highlow(h);
    h.module = "analysis";
    check_analysis(h);
    return out;
}

}  // namespace fnls
