#include "fnlslab/highlow.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "fft_internal.hpp"
#include "fnlslab/propagator.hpp"
#include "solver_internal.hpp"

namespace fnls {

namespace {

std::vector<double> bin_radii(const Grid& g) {
    std::vector<double> r(g.size());
    std::vector<int> idx(g.dim());
    for (std::size_t i = 0; i < g.size(); ++i) {
        g.unflatten(i, idx.data());
        double x2 = 0.0;
        for (int a = 0; a < g.dim(); ++a) {
            double xi = g.frequency(idx[a]);
            x2 += xi * xi;
        }
        r[i] = std::sqrt(x2);
    }
    return r;
}

}  // namespace

SplitResult split_data(const Field& u, double p, double r, double N,
                       const ModulationPartition& part, int threads) {
    const Grid& g = *u.grid;
    if (!same_grid(g, *part.grid()))
        throw std::invalid_argument("split_data: partition grid mismatch");
    if (!(p > 2.0) || !(r > p))
        throw std::invalid_argument("split_data requires 2 < p < r");
    if (!(N > 1.0)) throw std::invalid_argument("split_data requires N > 1");

    SplitResult res;
    res.split_parameter = N;
    res.gamma = (0.5 - 1.0 / p) / (1.0 / p - 1.0 / r);
    res.source_mod = mod_norm(u, part, ModNormSpec(p, holder_conjugate(p)),
                              threads);
    res.target_high_mod = res.source_mod / N;
    ModNormSpec high_spec(r, holder_conjugate(r));

    std::vector<double> radii = bin_radii(g);
    std::vector<double> shells(radii);
    std::sort(shells.begin(), shells.end());
    shells.erase(std::unique(shells.begin(), shells.end()), shells.end());

    std::vector<cplx> raw(g.size());
    detail::dft(g.dim(), g.points(), u.values.data(), raw.data(), true);
    const double inv_total = 1.0 / static_cast<double>(g.size());

    auto high_for_radius = [&](double R) {
        std::vector<cplx> spec(g.size());
        for (std::size_t i = 0; i < g.size(); ++i)
            spec[i] = radii[i] <= R ? cplx(0.0, 0.0) : raw[i] * inv_total;
        Field w(u.grid, u.time_tag);
        detail::dft(g.dim(), g.points(), spec.data(), w.values.data(), false);
        return w;
    };

    // ||high(R)||_M is nonincreasing and piecewise constant in R; find the
    // smallest shell radius reaching the target.
    std::size_t lo = 0, hi = shells.size() - 1;
    double norm_hi = mod_norm(high_for_radius(shells[hi]), part, high_spec,
                              threads);
    if (norm_hi > res.target_high_mod)
        throw std::runtime_error(
            "split_data: cutoff would exceed the grid band; refine the grid");
    double norm_lo = mod_norm(high_for_radius(shells[lo]), part, high_spec,
                              threads);
    if (norm_lo <= res.target_high_mod) {
        hi = lo;
    } else {
        while (hi - lo > 1) {
            std::size_t mid = lo + (hi - lo) / 2;
            double nm = mod_norm(high_for_radius(shells[mid]), part, high_spec,
                                 threads);
            if (nm <= res.target_high_mod)
                hi = mid;
            else
                lo = mid;
        }
    }
    if (hi == shells.size() - 1)
        throw std::runtime_error(
            "split_data: cutoff reaches the grid band edge; refine the grid");

    res.cutoff_radius = shells[hi];
    res.high = high_for_radius(res.cutoff_radius);
    res.low = u - res.high;
    res.low_l2 = l2_norm(res.low);
    res.high_mod = mod_norm(res.high, part, high_spec, threads);
    return res;
}

InteractionResult solve_interaction(const std::vector<Field>& v_states,
                                    const Field& psi, const EquationSpec& eq,
                                    const WindowMesh& mesh,
                                    const InteractionOptions& opts) {
    eq.validate_raw();
    const int m = mesh.subintervals;
    if (static_cast<int>(v_states.size()) != m + 1)
        throw std::invalid_argument("solve_interaction: v/mesh mismatch");
    const GridPtr& grid = psi.grid;
    Dispersion beta(eq.beta);

    // Linear evolution of the high datum on the mesh, and v + U(t) psi.
    std::vector<Field> upsi, vpsi;
    upsi.reserve(m + 1);
    vpsi.reserve(m + 1);
    for (int j = 0; j <= m; ++j) {
        upsi.push_back(apply_propagator(psi, beta, mesh.times[j]));
        vpsi.push_back(v_states[j] + upsi[j]);
    }

    const cplx sc(eq.sign * eq.coupling, 0.0);
    const Field zero(grid);

    // Fixed forcing: the cross term G(v, U psi, 0); its Duhamel integral is
    // the base of the iteration.
    std::vector<Field> fixed(m + 1, Field(grid));
    for (int j = 0; j <= m; ++j) {
        Field gj = eq.kind == NonlinearityKind::power
                       ? power_difference(v_states[j], upsi[j], zero, eq.alpha)
                       : hartree_difference(v_states[j], upsi[j], zero, eq.nu);
        fixed[j] = scaled(gj, sc);
    }
    std::vector<Field> base =
        detail::duhamel_integral(grid, eq.beta, mesh, fixed);

    auto rhs = [&](int j, const Field& w) {
        Field gj = eq.kind == NonlinearityKind::power
                       ? power_difference(vpsi[j], w, zero, eq.alpha)
                       : hartree_difference(vpsi[j], w, zero, eq.nu);
        return scaled(gj, sc);
    };
    double q, r;
    {
        Exponents ex = compute_exponents(eq, 2.5);
        if (eq.kind == NonlinearityKind::power) {
            q = 1.0 / ex.kappa;
            r = eq.alpha + 2.0;
        } else {
            q = 4.0 / ex.theta;
            r = 4.0 * eq.n / (2.0 * eq.n - eq.nu);
        }
    }
    auto gate = [&](const std::vector<Field>& upd) {
        Trajectory t;
        t.times = mesh.times;
        t.states = upd;
        return spacetime_norm(t, q, r, mesh.length).value;
    };
    PicardResult pr = detail::picard_fixed_point(
        grid, eq.beta, mesh, base, rhs, opts.tol, opts.max_iter,
        opts.throw_on_noncontraction, /*start_from_zero=*/true,
        "interaction window conditions violated numerically", gate,
        /*gate_on_xnorm=*/true);

    InteractionResult out;
    out.w = std::move(pr.trajectory);
    out.contraction_ratio = pr.contraction_ratio;
    out.iterations = pr.iterations;
    out.converged = pr.converged;
    out.abort_reason = pr.abort_reason;
    out.w_end_l2 = l2_norm(out.w.states.back());
    for (const Field& f : out.w.states)
        out.w_sup_l2 = std::max(out.w_sup_l2, l2_norm(f));
    return out;
}

GammaRangeReport check_gamma_range(const EquationSpec& eq, double p_or_s) {
    Exponents ex = compute_exponents(eq, p_or_s);
    GammaRangeReport rep;
    if (eq.kind == NonlinearityKind::power) {
        rep.gamma = ex.gamma;
        rep.gamma_upper = ex.gamma_upper;
        rep.index_max = ex.p_max;
    } else {
        rep.gamma = ex.gamma_tilde;
        rep.gamma_upper = 2.0 * (1.0 - ex.theta) / (2.0 + ex.theta);
        rep.index_max = ex.s_max;
    }
    rep.horizon_exponent = ex.horizon_exponent;
    rep.horizon_positive = ex.horizon_exponent > 0.0;
    rep.index_in_range = ex.index_in_range;
    bool gamma_in_range = rep.gamma > 0.0 && rep.gamma < rep.gamma_upper;
    rep.consistent = (gamma_in_range == rep.horizon_positive) &&
                     (rep.index_in_range == rep.horizon_positive);
    return rep;
}

void ledger_to_csv(const IterationLedger& ledger, std::ostream& os) {
    os << "step,t_start,t_end,window,phi_l2,w_end_l2,w_sup_l2,psi_mod,"
          "cond_cap_ok,cond_data_ok,cond_psi_ok,cond_data_bound,"
          "cond_psi_bound,v_ratio,w_ratio,composed_gap\r\n";
    auto num = [](double v) {
        std::ostringstream s;
        s.precision(17);
        s << v;
        return s.str();
    };
    for (const LedgerStep& st : ledger.steps) {
        os << st.k << ',' << num(st.t_start) << ',' << num(st.t_end) << ','
           << num(st.window) << ',' << num(st.phi_l2) << ','
           << num(st.w_end_l2) << ',' << num(st.w_sup_l2) << ','
           << num(st.psi_mod) << ',' << (st.cond_cap_ok ? 1 : 0) << ','
           << (st.cond_data_ok ? 1 : 0) << ',' << (st.cond_psi_ok ? 1 : 0)
           << ',' << num(st.cond_data_bound) << ',' << num(st.cond_psi_bound)
           << ',' << num(st.v_ratio) << ',' << num(st.w_ratio) << ','
           << num(st.composed_gap) << "\r\n";
    }
}

namespace {

double window_length(const EquationSpec& eq, const Exponents& ex, double C,
                     double N) {
    double T;
    if (eq.kind == NonlinearityKind::power) {
        T = std::pow(3.0 * C * std::pow(N, ex.gamma), -eq.alpha / ex.omega);
    } else {
        T = std::pow(3.0 * C * std::pow(N, ex.gamma_tilde),
                     -2.0 / (1.0 - ex.theta));
    }
    return std::min(1.0, T);
}

}  // namespace

IterationLedger bourgain_iterate(const Field& u0, const EquationSpec& eq,
                                 double p_or_s, double N, double horizon,
                                 const ModulationPartition& part,
                                 const BourgainOptions& opts) {
    eq.validate_raw();
    if (!(horizon > 0.0)) throw std::invalid_argument("horizon must be positive");
    Exponents ex = compute_exponents(eq, p_or_s);
    double r = eq.target_lebesgue();
    ModNormSpec high_spec(r, holder_conjugate(r));

    SplitResult split = split_data(u0, p_or_s, r, N, part, opts.mod_threads);

    IterationLedger led;
    led.split_parameter = N;
    led.gamma = split.gamma;
    led.horizon_target = horizon;
    led.phi0_l2 = split.low_l2;
    led.psi0_mod = split.high_mod;
    led.source_mod = split.source_mod;
    led.cutoff_radius = split.cutoff_radius;
    led.predicted_horizon_exponent = ex.horizon_exponent;
    led.growth_constant = opts.growth_constant;

    Dispersion beta(eq.beta);

    // Optional calibration: largest C whose step-0 interaction solve
    // contracts at or below the target ratio.
    double C = opts.constant;
    if (opts.auto_calibrate) {
        InteractionOptions probe = opts.interaction;
        probe.throw_on_noncontraction = false;
        probe.max_iter = std::min(probe.max_iter, 30);
        auto ratio_at = [&](double c) {
            double T = window_length(eq, ex, c, N);
            WindowMesh mesh = WindowMesh::uniform(T, opts.picard.subintervals);
            PicardOptions popt = opts.picard;
            popt.throw_on_noncontraction = false;
            PicardResult v = picard_local_solve(split.low, eq, T, popt);
            if (!v.converged) return std::numeric_limits<double>::infinity();
            InteractionResult w = solve_interaction(v.trajectory.states,
                                                    split.high, eq, mesh, probe);
            if (!w.converged) return std::numeric_limits<double>::infinity();
            return std::max(v.contraction_ratio, w.contraction_ratio);
        };
        // The constant multiplies the norm inside the window formula, so the
        // window shrinks (and contraction improves) as C grows.  Calibration
        // finds the smallest C, i.e. the largest window, still contracting.
        double lo = 1.0 / 64.0, hi = 64.0;
        if (ratio_at(lo) <= opts.calib_target) {
            C = lo;
        } else if (ratio_at(hi) > opts.calib_target) {
            throw std::runtime_error(
                "bourgain calibration failed: no contraction even at the "
                "largest constant");
        } else {
            double llo = std::log(lo), lhi = std::log(hi);
            for (int it = 0; it < 8; ++it) {
                double mid = 0.5 * (llo + lhi);
                if (ratio_at(std::exp(mid)) <= opts.calib_target)
                    lhi = mid;
                else
                    llo = mid;
            }
            C = std::exp(lhi);
        }
    }
    led.constant = C;
    const double T = window_length(eq, ex, C, N);
    led.window = T;
    WindowMesh mesh = WindowMesh::uniform(T, opts.picard.subintervals);

    WindowRule cond_rule = eq.kind == NonlinearityKind::power
                               ? WindowRule::c1c2c3
                               : WindowRule::d1d2d3;
    double growth_expo = eq.kind == NonlinearityKind::power
                             ? ex.kappa
                             : ex.theta / 4.0;
    double gamma_val = eq.kind == NonlinearityKind::power ? ex.gamma
                                                          : ex.gamma_tilde;

    Field phi = split.low;
    Field reference = u0;  // split-step reference for the composed check
    const int ref_steps = std::max(16, opts.reference_substeps);

    led.growth_ratio_max = 0.0;
    int k = 0;
    double t = 0.0;
    while (true) {
        if (t >= horizon - 1e-12 * std::max(1.0, horizon)) {
            led.completed = true;
            led.stop_reason = "horizon reached";
            break;
        }
        if (k >= opts.k_max) {
            led.stop_reason = "step budget (k_max) reached";
            break;
        }
        LedgerStep st;
        st.k = k;
        st.t_start = t;
        st.t_end = t + T;
        st.window = T;
        st.phi_l2 = l2_norm(phi);

        Field psi_k = apply_propagator(split.high, beta, t);
        st.psi_mod = mod_norm(psi_k, part, high_spec, opts.mod_threads);

        WindowInputs wi;
        wi.data_norm = st.phi_l2 + st.psi_mod;
        wi.psi_norm = st.psi_mod;
        wi.constant = C;
        ExistenceWindow cond = existence_window(wi, eq, cond_rule);
        st.cond_cap_ok = T <= cond.cap_bound + 1e-15;
        st.cond_data_ok = T <= cond.data_bound * (1.0 + 1e-12);
        st.cond_psi_ok = T <= cond.psi_bound * (1.0 + 1e-12);
        st.cond_data_bound = cond.data_bound;
        st.cond_psi_bound = cond.psi_bound;

        // Growth ledger ratio ||phi_k|| / (N^gamma + T^e k / N).
        double growth_ref = std::pow(N, gamma_val) +
                            std::pow(T, growth_expo) * k / N;
        led.growth_ratio_max =
            std::max(led.growth_ratio_max, st.phi_l2 / growth_ref);

        phi.time_tag = t;
        PicardResult v = picard_local_solve(phi, eq, T, opts.picard);
        st.v_ratio = v.contraction_ratio;
        InteractionResult w = solve_interaction(v.trajectory.states, psi_k, eq,
                                                mesh, opts.interaction);
        st.w_ratio = w.contraction_ratio;
        st.w_end_l2 = w.w_end_l2;
        st.w_sup_l2 = w.w_sup_l2;

        Field phi_next = v.trajectory.states.back() + w.w.states.back();

        if (opts.composed_check) {
            double h = T / ref_steps;
            Trajectory ref =
                evolve_split_step(reference, eq, h, ref_steps, ref_steps);
            reference = ref.states.back();
            Field psi_next = apply_propagator(split.high, beta, t + T);
            Field composed = phi_next + psi_next;
            st.composed_gap = relative_l2_gap(composed, reference);
        }

        led.steps.push_back(st);
        phi = std::move(phi_next);
        t += T;
        ++k;
    }
    led.achieved_horizon = t;
    led.growth_bound_ok = led.growth_ratio_max <= opts.growth_constant;
    return led;
}

}  // namespace fnls
