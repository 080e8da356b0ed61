#include "fnlslab/scenarios.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>

#include "fnlslab/analysis.hpp"
#include "fnlslab/checkpoint.hpp"
#include "fnlslab/exponents.hpp"
#include "fnlslab/highlow.hpp"
#include "fnlslab/modulation.hpp"
#include "fnlslab/parallel.hpp"
#include "fnlslab/propagator.hpp"
#include "fnlslab/report.hpp"
#include "fnlslab/sampling.hpp"
#include "fnlslab/solver.hpp"
#include "fnlslab/verify.hpp"

namespace fnls {

const char* version_string() { return "0.1.0"; }

namespace {

namespace fs = std::filesystem;

struct Context {
    const ExperimentConfig& cfg;
    fs::path out;
    int threads;
    std::uint64_t seed;
    ResultsDoc doc;

    Context(const ExperimentConfig& c, const RunOverrides& o)
        : cfg(c),
          out(o.out_dir.empty() ? c.get_str("experiment", "out_dir", ".")
                                : o.out_dir),
          threads(o.threads > 0
                      ? o.threads
                      : resolve_thread_count(c.get_int("budgets", "threads", 0))),
          seed(o.seed_override_set ? o.seed_override : c.seed),
          doc(c, version_string()) {
        fs::create_directories(out);
        doc.meta()["seed"] = seed;
    }

    std::string file(const std::string& name) const {
        return (out / name).string();
    }
};

PicardOptions picard_options(const ExperimentConfig& c) {
    PicardOptions p;
    p.tol = c.get_num("budgets", "tol", 1e-9);
    p.max_iter = c.get_int("budgets", "max_iter", 40);
    p.subintervals = c.get_int("budgets", "subintervals", 16);
    return p;
}

double slope_fit(const std::vector<double>& x, const std::vector<double>& y) {
    double mx = 0, my = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= x.size();
    my /= y.size();
    double num = 0, den = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        num += (x[i] - mx) * (y[i] - my);
        den += (x[i] - mx) * (x[i] - mx);
    }
    return num / den;
}

int scenario_exponents(Context& ctx) {
    EquationSpec eq = ctx.cfg.equation();
    eq.validate_raw();
    double index = ctx.cfg.get_num(
        "exponents", eq.kind == NonlinearityKind::power ? "p" : "s", 2.2);
    Exponents e = compute_exponents(eq, index);
    const char* src = "compute_exponents";
    ctx.doc.add("index", e.index, src);
    if (eq.kind == NonlinearityKind::power) {
        ctx.doc.add("omega", e.omega, src);
        ctx.doc.add("kappa", e.kappa, src);
        ctx.doc.add("gamma", e.gamma, src);
        ctx.doc.add("p_max", e.p_max, src);
        ctx.doc.add("case_value", e.case_value, src);
        ctx.doc.add("gamma_upper", e.gamma_upper, src);
    } else {
        ctx.doc.add("theta", e.theta, src);
        ctx.doc.add("gamma_tilde", e.gamma_tilde, src);
        ctx.doc.add("s_max", e.s_max, src);
    }
    ctx.doc.add("s_critical", e.s_critical, src);
    ctx.doc.add("horizon_exponent", e.horizon_exponent, src);
    ctx.doc.add("index_in_range", e.index_in_range ? 1.0 : 0.0, src);
    GammaRangeReport rep = check_gamma_range(eq, index);
    ctx.doc.add("gamma_range_consistent", rep.consistent ? 1.0 : 0.0,
                "check_gamma_range");
    for (const std::string& v : eq.theorem_violations())
        ctx.doc.add("scope_warning", nlohmann::json(v), "theorem_violations");
    return 0;
}

int scenario_evolve(Context& ctx) {
    GridPtr g = ctx.cfg.grid();
    EquationSpec eq = ctx.cfg.equation();
    Field u0 = ctx.cfg.datum(g);
    double horizon = ctx.cfg.get_num("evolve", "horizon", 1.0);
    std::string method = ctx.cfg.get_str("evolve", "method", "split_step");

    std::vector<std::vector<std::string>> rows;
    auto record = [&](double t, const Field& f) {
        double m = l2_norm(f);
        rows.push_back({format_full(t), format_full(m * m),
                        format_full(lp_norm(f, eq.target_lebesgue()))});
    };

    if (method == "split_step") {
        double dt = ctx.cfg.get_num("evolve", "dt", 1e-3);
        double max_step = ctx.cfg.get_num("budgets", "max_step", 0.1);
        if (dt > max_step)
            throw std::invalid_argument(
                "config [evolve] dt exceeds the stability budget "
                "[budgets] max_step");
        int steps = static_cast<int>(std::ceil(horizon / dt));
        int stride = std::max(1, steps / ctx.cfg.get_int("budgets",
                                                         "snapshots", 16));
        Trajectory traj = evolve_split_step(u0, eq, horizon / steps, steps,
                                            stride);
        for (std::size_t i = 0; i < traj.size(); ++i)
            record(traj.times[i], traj.states[i]);
        double m0 = l2_norm(u0), m1 = l2_norm(traj.states.back());
        ctx.doc.add("mass_drift",
                    std::abs(m1 * m1 - m0 * m0) / (m0 * m0), "split_step");
        if (ctx.cfg.get_bool("evolve", "emit_checkpoints", false)) {
            save_trajectory(traj, ctx.file("trajectory.fnls"));
            ctx.doc.add_file("checkpoint", "trajectory.fnls");
        }
    } else if (method == "picard") {
        GlobalOptions opts;
        opts.constant = ctx.cfg.get_num("budgets", "constant", 1.0);
        opts.window_cap = ctx.cfg.get_num("budgets", "window_cap", 1.0);
        opts.picard = picard_options(ctx.cfg);
        GlobalResult res = l2_global_evolve(u0, eq, horizon, opts);
        for (std::size_t i = 0; i < res.trajectory.size(); ++i)
            record(res.trajectory.times[i], res.trajectory.states[i]);
        ctx.doc.add("window", res.window, "existence_window");
        ctx.doc.add("windows_used",
                    static_cast<double>(res.window_lengths.size()),
                    "l2_global_evolve");
        double worst = 0.0;
        for (double m : res.mass)
            worst = std::max(worst, std::abs(m - res.mass.front()) /
                                        res.mass.front());
        ctx.doc.add("mass_drift", worst, "l2_global_evolve");
        double rmax = 0.0;
        for (double r : res.window_ratios) rmax = std::max(rmax, r);
        ctx.doc.add("max_contraction_ratio", rmax, "picard_local_solve");
        if (ctx.cfg.get_bool("evolve", "emit_checkpoints", false)) {
            save_trajectory(res.trajectory, ctx.file("trajectory.fnls"));
            ctx.doc.add_file("checkpoint", "trajectory.fnls");
        }
    } else {
        throw std::invalid_argument(
            "config [evolve] method: expected split_step or picard");
    }
    write_csv(ctx.file("series.csv"), {"t", "mass", "target_lp"}, rows);
    ctx.doc.add_file("series", "series.csv");
    return 0;
}

int scenario_norms(Context& ctx) {
    GridPtr g = ctx.cfg.grid();
    ModulationPartition part = build_partition(g);
    Field u0 = ctx.cfg.datum(g);
    std::vector<double> ps = ctx.cfg.get_list("norms", "p_list", {2.0, 3.0});
    nlohmann::json values = nlohmann::json::array();
    for (double p : ps) {
        double pc = holder_conjugate(p);
        double v = mod_norm(u0, part, ModNormSpec(p, pc), ctx.threads);
        values.push_back({{"p", p}, {"q", pc}, {"norm", v}});
    }
    ctx.doc.add("datum_mod_norms", values, "mod_norm");
    ctx.doc.add("datum_l2", l2_norm(u0), "l2_norm");

    int samples = ctx.cfg.get_int("norms", "samples", 40);
    std::vector<Field> family;
    for (int s = 0; s < samples; ++s)
        family.push_back(random_band_limited(g, ctx.seed, s, 0.5));
    double p = ctx.cfg.get_num("norms", "embedding_p", 4.0);
    NormRef mlow{NormKind::modulation, p,
                 std::min(p, holder_conjugate(p))};
    NormRef leb{NormKind::lebesgue, p, 0.0};
    NormRef mhigh{NormKind::modulation, p,
                  std::max(p, holder_conjugate(p))};
    ctx.doc.add("embedding_mod_to_lp",
                embedding_check(mlow, leb, family, part, ctx.threads),
                "embedding_check");
    ctx.doc.add("embedding_lp_to_mod",
                embedding_check(leb, mhigh, family, part, ctx.threads),
                "embedding_check");
    return 0;
}

int scenario_split(Context& ctx) {
    GridPtr g = ctx.cfg.grid();
    ModulationPartition part = build_partition(g);
    Field u0 = ctx.cfg.datum(g);
    EquationSpec eq = ctx.cfg.equation();
    double p = ctx.cfg.get_num("split", "p", 2.2);
    double r = ctx.cfg.get_num("split", "r", eq.target_lebesgue());
    std::vector<double> Ns =
        ctx.cfg.get_list("split", "n_list", {2.0, 4.0, 8.0, 16.0});
    std::vector<std::vector<std::string>> rows;
    std::vector<double> logN, logV, logW;
    for (double N : Ns) {
        SplitResult s = split_data(u0, p, r, N, part, ctx.threads);
        rows.push_back({format_full(N), format_full(s.cutoff_radius),
                        format_full(s.low_l2), format_full(s.high_mod),
                        format_full(s.target_high_mod)});
        logN.push_back(std::log(N));
        logV.push_back(std::log(s.low_l2));
        logW.push_back(std::log(s.high_mod));
    }
    write_csv(ctx.file("split.csv"),
              {"N", "cutoff_radius", "low_l2", "high_mod", "target_high_mod"},
              rows);
    ctx.doc.add_file("series", "split.csv");
    ctx.doc.add("gamma", (0.5 - 1.0 / p) / (1.0 / p - 1.0 / r), "split_data");
    if (Ns.size() >= 2) {
        ctx.doc.add("low_l2_slope", slope_fit(logN, logV), "split_data");
        ctx.doc.add("high_mod_slope", slope_fit(logN, logW), "split_data");
    }
    return 0;
}

int scenario_interaction(Context& ctx) {
    GridPtr g = ctx.cfg.grid();
    EquationSpec eq = ctx.cfg.equation();
    Field phi = ctx.cfg.datum(g);
    double psi_amp = ctx.cfg.get_num("interaction", "psi_amplitude", 0.2);
    double psi_width = ctx.cfg.get_num("interaction", "psi_width", 0.8);
    Field psi =
        radial_profile(g, RadialKind::gaussian, {psi_amp, psi_width, 0.0});
    std::vector<double> Ts = ctx.cfg.get_list(
        "interaction", "t_list", {1.0 / 16, 1.0 / 8, 1.0 / 4, 1.0 / 2});
    PicardOptions popts = picard_options(ctx.cfg);
    InteractionOptions iopts;
    iopts.tol = popts.tol;
    iopts.max_iter = ctx.cfg.get_int("budgets", "max_iter", 60);
    std::vector<std::vector<std::string>> rows;
    std::vector<double> logT, logW;
    for (double T : Ts) {
        WindowMesh mesh = WindowMesh::uniform(T, popts.subintervals);
        PicardResult v = picard_local_solve(phi, eq, T, popts);
        InteractionResult w =
            solve_interaction(v.trajectory.states, psi, eq, mesh, iopts);
        rows.push_back({format_full(T), format_full(w.w_sup_l2),
                        format_full(w.w_end_l2),
                        format_full(w.contraction_ratio)});
        logT.push_back(std::log(T));
        logW.push_back(std::log(w.w_sup_l2));
    }
    write_csv(ctx.file("interaction.csv"),
              {"T", "w_sup_l2", "w_end_l2", "contraction_ratio"}, rows);
    ctx.doc.add_file("series", "interaction.csv");
    Exponents ex = compute_exponents(eq, 2.05);
    double expo = eq.kind == NonlinearityKind::power ? ex.kappa
                                                     : ex.theta / 4.0;
    ctx.doc.add("expected_exponent", expo, "compute_exponents");
    if (Ts.size() >= 2)
        ctx.doc.add("measured_slope", slope_fit(logT, logW),
                    "solve_interaction");
    return 0;
}

int scenario_bourgain(Context& ctx) {
    GridPtr g = ctx.cfg.grid();
    ModulationPartition part = build_partition(g);
    EquationSpec eq = ctx.cfg.equation();
    Field u0 = ctx.cfg.datum(g);
    double p = ctx.cfg.get_num("bourgain", "p", 2.2);
    double N = ctx.cfg.get_num("bourgain", "N", 4.0);
    double horizon = ctx.cfg.get_num("bourgain", "horizon", 0.5);

    BourgainOptions opts;
    opts.constant = ctx.cfg.get_num("budgets", "constant", 1.0);
    opts.auto_calibrate = ctx.cfg.get_bool("budgets", "auto_calibrate", false);
    opts.calib_target = ctx.cfg.get_num("budgets", "calib_target", 0.5);
    opts.k_max = ctx.cfg.get_int("budgets", "k_max", 64);
    opts.growth_constant = ctx.cfg.get_num("budgets", "growth_constant", 10.0);
    opts.picard = picard_options(ctx.cfg);
    opts.interaction.tol = opts.picard.tol;
    opts.mod_threads = ctx.threads;
    opts.composed_check = ctx.cfg.get_bool("bourgain", "composed_check", true);
    opts.reference_substeps =
        ctx.cfg.get_int("budgets", "reference_substeps", 256);

    IterationLedger led = bourgain_iterate(u0, eq, p, N, horizon, part, opts);

    std::ofstream csv(ctx.file("ledger.csv"), std::ios::binary);
    ledger_to_csv(led, csv);
    csv.close();
    ctx.doc.add_file("ledger", "ledger.csv");

    const char* src = "bourgain_iterate";
    ctx.doc.add("window", led.window, src);
    ctx.doc.add("constant", led.constant, src);
    ctx.doc.add("steps", static_cast<double>(led.steps.size()), src);
    ctx.doc.add("achieved_horizon", led.achieved_horizon, src);
    ctx.doc.add("completed", led.completed ? 1.0 : 0.0, src);
    ctx.doc.add("gamma", led.gamma, src);
    ctx.doc.add("phi0_l2", led.phi0_l2, src);
    ctx.doc.add("psi0_mod", led.psi0_mod, src);
    ctx.doc.add("predicted_horizon_exponent", led.predicted_horizon_exponent,
                src);
    ctx.doc.add("growth_ratio_max", led.growth_ratio_max, src);
    ctx.doc.add("growth_bound_ok", led.growth_bound_ok ? 1.0 : 0.0, src);
    double worst_gap = 0.0;
    bool any_violation = false;
    for (const LedgerStep& st : led.steps) {
        worst_gap = std::max(worst_gap, st.composed_gap);
        any_violation = any_violation || !st.cond_data_ok || !st.cond_psi_ok;
    }
    ctx.doc.add("worst_composed_gap", worst_gap, src);
    ctx.doc.add("window_condition_violations", any_violation ? 1.0 : 0.0, src);
    nlohmann::json led_json = nlohmann::json::array();
    for (const LedgerStep& st : led.steps)
        led_json.push_back({{"k", st.k},
                            {"phi_l2", st.phi_l2},
                            {"w_end_l2", st.w_end_l2},
                            {"w_sup_l2", st.w_sup_l2},
                            {"psi_mod", st.psi_mod},
                            {"t_end", st.t_end},
                            {"cond_data_ok", st.cond_data_ok},
                            {"cond_psi_ok", st.cond_psi_ok},
                            {"composed_gap", st.composed_gap}});
    ctx.doc.add("ledger", led_json, src);
    return 0;
}

int scenario_strichartz(Context& ctx) {
    GridPtr g = ctx.cfg.grid();
    EquationSpec eq = ctx.cfg.equation();
    double q = ctx.cfg.get_num("strichartz", "q", 3.0);
    double r = ctx.cfg.get_num("strichartz", "r", 4.0);
    double T = ctx.cfg.get_num("strichartz", "t", 1.0);
    int snapshots = ctx.cfg.get_int("strichartz", "snapshots", 17);
    int samples = ctx.cfg.get_int("strichartz", "samples", 12);

    AdmissiblePair pair{q, r};
    if (std::abs(admissibility_residual(pair, eq.beta, eq.n)) > 1e-10) {
        auto solved = admissible_q(r, eq.beta, eq.n);
        if (!solved)
            throw std::invalid_argument(
                "config [strichartz]: (q, r) is not beta-fractional "
                "admissible and no admissible q exists for this r");
        pair.q = *solved;
    }
    std::vector<Field> family;
    for (int s = 0; s < samples; ++s)
        family.push_back(random_radial(g, ctx.seed, s));
    StrichartzStats base =
        strichartz_homogeneous(family, eq.beta, pair, T, snapshots,
                               ctx.threads);
    // refinement: doubled resolution and snapshot count on the same family
    GridPtr gf = make_grid(g->dim(), g->half_extent(), 2 * g->points());
    std::vector<Field> fine;
    for (int s = 0; s < samples; ++s)
        fine.push_back(random_radial(gf, ctx.seed, s));
    StrichartzStats refined = strichartz_homogeneous(
        fine, eq.beta, pair, T, 2 * (snapshots - 1) + 1, ctx.threads);
    double drift = std::abs(refined.max_ratio - base.max_ratio) /
                   base.max_ratio;
    nlohmann::json rec = {{"pair", {pair.q, pair.r}},
                          {"beta", eq.beta},
                          {"n", eq.n},
                          {"max_ratio", base.max_ratio},
                          {"refinement_drift", drift}};
    ctx.doc.add("homogeneous", rec, "strichartz_homogeneous");

    if (ctx.cfg.get_bool("strichartz", "inhomogeneous", false)) {
        StrichartzStats inhom = strichartz_inhomogeneous(
            family, eq.beta, pair, pair, T,
            ctx.cfg.get_int("budgets", "subintervals", 16), ctx.threads);
        StrichartzStats inhom_fine = strichartz_inhomogeneous(
            fine, eq.beta, pair, pair, T,
            2 * ctx.cfg.get_int("budgets", "subintervals", 16), ctx.threads);
        double idrift = std::abs(inhom_fine.max_ratio - inhom.max_ratio) /
                        inhom.max_ratio;
        nlohmann::json irec = {{"pair", {pair.q, pair.r}},
                               {"beta", eq.beta},
                               {"n", eq.n},
                               {"max_ratio", inhom.max_ratio},
                               {"refinement_drift", idrift}};
        ctx.doc.add("inhomogeneous", irec, "strichartz_inhomogeneous");
    }
    return 0;
}

int scenario_verify(Context& ctx) {
    std::string filter = ctx.cfg.get_str("verify", "filter", "");
    std::vector<CheckResult> results =
        run_verify(filter, ctx.threads, ctx.seed == 0 ? 1 : ctx.seed);
    bool all = true;
    nlohmann::json arr = nlohmann::json::array();
    for (const CheckResult& r : results) {
        all = all && r.pass;
        arr.push_back({{"module", r.module},
                       {"name", r.name},
                       {"pass", r.pass},
                       {"observed", r.observed},
                       {"bound", r.bound},
                       {"detail", r.detail}});
    }
    ctx.doc.add("checks", arr, "run_verify");
    ctx.doc.add("all_pass", all ? 1.0 : 0.0, "run_verify");
    return all ? 0 : 1;
}

}  // namespace

int run_scenario(const ExperimentConfig& config, const RunOverrides& o) {
    validate_config(config);
    Context ctx(config, o);
    int status = 0;
    if (config.scenario == "exponents")
        status = scenario_exponents(ctx);
    else if (config.scenario == "evolve")
        status = scenario_evolve(ctx);
    else if (config.scenario == "norms")
        status = scenario_norms(ctx);
    else if (config.scenario == "split")
        status = scenario_split(ctx);
    else if (config.scenario == "interaction")
        status = scenario_interaction(ctx);
    else if (config.scenario == "bourgain")
        status = scenario_bourgain(ctx);
    else if (config.scenario == "strichartz")
        status = scenario_strichartz(ctx);
    else if (config.scenario == "verify")
        status = scenario_verify(ctx);
    else
        throw std::invalid_argument("unknown scenario " + config.scenario);
    ctx.doc.meta()["status"] = status;
    ctx.doc.write(ctx.file("results.json"));
    return status;
}

}  // namespace fnls
