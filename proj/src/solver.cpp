#include "fnlslab/solver.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "fft_internal.hpp"
#include "fnlslab/propagator.hpp"
#include "solver_internal.hpp"

namespace fnls {

ExistenceWindow existence_window(const WindowInputs& inputs,
                                 const EquationSpec& eq, WindowRule rule) {
    if (inputs.data_norm < 0.0 || inputs.psi_norm < 0.0 ||
        !(inputs.constant > 0.0))
        throw std::invalid_argument("existence_window: bad inputs");
    bool power_rule =
        rule == WindowRule::tchoice || rule == WindowRule::c1c2c3;
    if (power_rule != (eq.kind == NonlinearityKind::power))
        throw std::invalid_argument(
            "existence_window: rule does not match the nonlinearity kind");
    const double inf = std::numeric_limits<double>::infinity();
    Exponents ex = compute_exponents(
        eq, 2.5 /* any index; only omega/kappa/theta are used */);
    auto neg_power = [&](double norm, double expo) {
        return norm == 0.0 ? inf : inputs.constant * std::pow(norm, expo);
    };
    ExistenceWindow w;
    w.rule = rule;
    w.inputs = inputs;
    w.cap_bound = 1.0;
    w.data_bound = inf;
    w.psi_bound = inf;
    switch (rule) {
        case WindowRule::tchoice:
            w.data_bound = neg_power(inputs.data_norm, -eq.alpha / ex.omega);
            break;
        case WindowRule::tilde_tchoice:
            w.data_bound = neg_power(inputs.data_norm, -2.0 / (1.0 - ex.theta));
            break;
        case WindowRule::c1c2c3:
            w.data_bound = neg_power(inputs.data_norm, -eq.alpha / ex.omega);
            w.psi_bound = neg_power(
                inputs.psi_norm,
                -eq.alpha / (ex.omega + eq.alpha * ex.kappa));
            break;
        case WindowRule::d1d2d3:
            w.data_bound = neg_power(inputs.data_norm, -2.0 / (1.0 - ex.theta));
            w.psi_bound = neg_power(inputs.psi_norm, -4.0 / (2.0 - ex.theta));
            break;
    }
    w.T = std::min({w.cap_bound, w.data_bound, w.psi_bound});
    return w;
}

WindowMesh WindowMesh::uniform(double T, int subintervals) {
    if (!(T > 0.0)) throw std::invalid_argument("mesh length must be positive");
    if (subintervals < 2 || subintervals % 2 != 0)
        throw std::invalid_argument("subintervals must be even and >= 2");
    WindowMesh m;
    m.length = T;
    m.subintervals = subintervals;
    m.times.resize(subintervals + 1);
    for (int j = 0; j <= subintervals; ++j)
        m.times[j] = T * static_cast<double>(j) / subintervals;
    return m;
}

void Trajectory::append(double t, Field f) {
    times.push_back(t);
    f.time_tag = t;
    states.push_back(std::move(f));
}

namespace detail {

namespace {

using Spec = std::vector<cplx>;

double l2_of_raw_spec_diff(const Grid& g, const Spec& a, const Spec& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += std::norm(a[i] - b[i]);
    double scale = std::pow(g.dx(), g.dim()) / static_cast<double>(g.size());
    return std::sqrt(s * scale);
}

std::vector<double> dispersion_phase(const Grid& g, double beta) {
    const double two_pi = 2.0 * std::numbers::pi;
    std::vector<double> phase(g.size());
    std::vector<int> idx(g.dim());
    for (std::size_t i = 0; i < g.size(); ++i) {
        g.unflatten(i, idx.data());
        double x2 = 0.0;
        for (int a = 0; a < g.dim(); ++a) {
            double xi = g.frequency(idx[a]);
            x2 += xi * xi;
        }
        phase[i] = x2 == 0.0 ? 0.0 : std::pow(two_pi * std::sqrt(x2), beta);
    }
    return phase;
}

// Cumulative Simpson: even indices close a full panel, odd indices take the
// half-panel Newton-Cotes rule through three nodes.
void cumulative_simpson(const std::vector<Spec>& g, double h,
                        std::vector<Spec>& out) {
    int m = static_cast<int>(g.size()) - 1;
    std::size_t n = g[0].size();
    out[0].assign(n, cplx(0.0, 0.0));
    for (int j = 1; j <= m; ++j) {
        out[j].resize(n);
        if (j % 2 == 0) {
            const double c = h / 3.0;
            for (std::size_t i = 0; i < n; ++i)
                out[j][i] = out[j - 2][i] +
                            c * (g[j - 2][i] + 4.0 * g[j - 1][i] + g[j][i]);
        } else {
            const double c = h / 12.0;
            for (std::size_t i = 0; i < n; ++i)
                out[j][i] = out[j - 1][i] +
                            c * (5.0 * g[j - 1][i] + 8.0 * g[j][i] -
                                 g[j + 1][i]);
        }
    }
}

}  // namespace

PicardResult picard_fixed_point(
    const GridPtr& grid, double beta, const WindowMesh& mesh,
    const std::vector<Field>& base,
    const std::function<Field(int, const Field&)>& rhs, double tol,
    int max_iter, bool throw_on_noncontraction, bool start_from_zero,
    const char* noncontraction_message,
    const std::function<double(const std::vector<Field>&)>& xnorm,
    bool gate_on_xnorm) {
    const Grid& g = *grid;
    const int m = mesh.subintervals;
    const std::size_t n = g.size();
    if (static_cast<int>(base.size()) != m + 1)
        throw std::invalid_argument("picard: base does not match the mesh");
    if (gate_on_xnorm && !xnorm)
        throw std::invalid_argument("picard: gate norm callback missing");

    std::vector<double> phase = dispersion_phase(g, beta);

    std::vector<Spec> base_spec(m + 1, Spec(n));
    for (int j = 0; j <= m; ++j)
        dft(g.dim(), g.points(), base[j].values.data(), base_spec[j].data(),
            true);

    std::vector<Field> u_phys(m + 1, Field(grid));
    std::vector<Spec> u_spec(m + 1, Spec(n, cplx(0.0, 0.0)));
    if (!start_from_zero) {
        for (int j = 0; j <= m; ++j) {
            u_phys[j] = base[j];
            u_spec[j] = base_spec[j];
        }
    }

    std::vector<Spec> forcing(m + 1, Spec(n));
    std::vector<Spec> integral(m + 1);
    std::vector<Field> update(m + 1, Field(grid));

    double scale = 0.0;
    for (int j = 0; j <= m; ++j) scale = std::max(scale, l2_norm(base[j]));
    const double noise_floor = std::max(scale, 1.0) * 1e-13;
    const double h = mesh.length / m;
    const double inv_total = 1.0 / static_cast<double>(n);

    PicardResult res;
    std::vector<double> gate_series;
    int stall = 0;
    for (int iter = 1; iter <= max_iter; ++iter) {
        for (int j = 0; j <= m; ++j) {
            Field f = rhs(j, u_phys[j]);
            dft(g.dim(), g.points(), f.values.data(), forcing[j].data(), true);
            const double t = mesh.times[j];
            for (std::size_t i = 0; i < n; ++i)
                forcing[j][i] *= std::polar(1.0, phase[i] * t);
        }
        cumulative_simpson(forcing, h, integral);
        double delta = 0.0;
        for (int j = 0; j <= m; ++j) {
            const double t = mesh.times[j];
            Spec next(n);
            for (std::size_t i = 0; i < n; ++i)
                next[i] = base_spec[j][i] +
                          cplx(0.0, 1.0) * std::polar(1.0, -phase[i] * t) *
                              integral[j][i];
            delta = std::max(delta, l2_of_raw_spec_diff(g, next, u_spec[j]));
            // New physical state; also materialize the update when a
            // reporting norm was requested.
            Field next_phys(grid);
            dft(g.dim(), g.points(), next.data(), next_phys.values.data(),
                false);
            for (std::size_t i = 0; i < n; ++i) next_phys.values[i] *= inv_total;
            if (xnorm) {
                for (std::size_t i = 0; i < n; ++i)
                    update[j].values[i] = next_phys.values[i] - u_phys[j].values[i];
            }
            u_spec[j] = std::move(next);
            u_phys[j] = std::move(next_phys);
        }
        res.iterations = iter;
        double xval = xnorm ? xnorm(update) : 0.0;
        double gate_val = gate_on_xnorm ? xval : delta;
        if (!gate_series.empty() && gate_series.back() > noise_floor) {
            double ratio = gate_val / gate_series.back();
            res.ratios.push_back(ratio);
            stall = ratio >= 1.0 ? stall + 1 : 0;
        }
        gate_series.push_back(gate_val);
        res.updates.push_back(delta);
        if (xnorm) res.updates_xnorm.push_back(xval);
        if (!all_finite(u_phys[m])) {
            res.abort_reason = "state stopped being finite";
            if (throw_on_noncontraction)
                throw std::runtime_error("picard: " + res.abort_reason);
            break;
        }
        if (stall >= 3) {
            std::ostringstream os;
            os << noncontraction_message
               << " (update ratio " << res.ratios.back() << " after "
               << iter << " iterations)";
            res.abort_reason = os.str();
            if (throw_on_noncontraction) throw std::runtime_error(res.abort_reason);
            break;
        }
        if (gate_val <= tol) {
            res.converged = true;
            break;
        }
    }
    if (!res.converged && res.abort_reason.empty())
        res.abort_reason = "maximum iterations reached";

    // Geometric mean of the contraction ratios above the noise floor.
    double log_sum = 0.0;
    int count = 0;
    for (std::size_t i = 0; i + 1 < gate_series.size(); ++i) {
        if (gate_series[i] > noise_floor && gate_series[i + 1] > 0.0) {
            log_sum += std::log(gate_series[i + 1] / gate_series[i]);
            ++count;
        }
    }
    res.contraction_ratio = count > 0 ? std::exp(log_sum / count) : 0.0;

    res.trajectory.times = mesh.times;
    res.trajectory.states = std::move(u_phys);
    for (int j = 0; j <= m; ++j)
        res.trajectory.states[j].time_tag = mesh.times[j];
    return res;
}

std::vector<Field> duhamel_integral(const GridPtr& grid, double beta,
                                    const WindowMesh& mesh,
                                    const std::vector<Field>& forcing) {
    const Grid& g = *grid;
    const int m = mesh.subintervals;
    const std::size_t n = g.size();
    if (static_cast<int>(forcing.size()) != m + 1)
        throw std::invalid_argument("duhamel_integral: forcing/mesh mismatch");
    std::vector<double> phase = dispersion_phase(g, beta);
    std::vector<Spec> spec(m + 1, Spec(n));
    for (int j = 0; j <= m; ++j) {
        dft(g.dim(), g.points(), forcing[j].values.data(), spec[j].data(), true);
        const double t = mesh.times[j];
        for (std::size_t i = 0; i < n; ++i)
            spec[j][i] *= std::polar(1.0, phase[i] * t);
    }
    std::vector<Spec> integral(m + 1);
    cumulative_simpson(spec, mesh.length / m, integral);
    std::vector<Field> out(m + 1, Field(grid));
    const double inv_total = 1.0 / static_cast<double>(n);
    for (int j = 0; j <= m; ++j) {
        const double t = mesh.times[j];
        Spec tmp(n);
        for (std::size_t i = 0; i < n; ++i)
            tmp[i] = cplx(0.0, 1.0) * std::polar(1.0, -phase[i] * t) *
                     integral[j][i];
        dft(g.dim(), g.points(), tmp.data(), out[j].values.data(), false);
        for (std::size_t i = 0; i < n; ++i) out[j].values[i] *= inv_total;
        out[j].time_tag = t;
    }
    return out;
}

}  // namespace detail

PicardResult picard_local_solve(const Field& u0, const EquationSpec& eq,
                                double T, const PicardOptions& opts) {
    eq.validate_raw();
    if (!all_finite(u0)) throw std::invalid_argument("picard: non-finite datum");
    WindowMesh mesh = WindowMesh::uniform(T, opts.subintervals);
    const GridPtr& grid = u0.grid;

    // Linear-flow base states U(t_j) u0.
    Dispersion beta(eq.beta);
    std::vector<Field> base;
    base.reserve(mesh.times.size());
    for (double t : mesh.times) base.push_back(apply_propagator(u0, beta, t));

    auto rhs = [&eq](int, const Field& u) {
        return evaluate_nonlinearity(u, eq);
    };
    auto xnorm = [&](const std::vector<Field>& upd) {
        Trajectory t;
        t.times = mesh.times;
        t.states = upd;
        return iteration_space_norm(t, eq, mesh.length);
    };
    PicardResult res = detail::picard_fixed_point(
        grid, eq.beta, mesh, base, rhs, opts.tol, opts.max_iter,
        opts.throw_on_noncontraction, /*start_from_zero=*/false,
        "window too large", xnorm);
    for (std::size_t j = 0; j < res.trajectory.size(); ++j) {
        res.trajectory.times[j] += u0.time_tag;
        res.trajectory.states[j].time_tag = res.trajectory.times[j];
    }
    return res;
}

GlobalResult l2_global_evolve(const Field& u0, const EquationSpec& eq,
                              double horizon, const GlobalOptions& opts) {
    if (!(horizon > 0.0)) throw std::invalid_argument("horizon must be positive");
    WindowRule rule = eq.kind == NonlinearityKind::power
                          ? WindowRule::tchoice
                          : WindowRule::tilde_tchoice;
    // Mass conservation keeps ||u(kT)||_2 equal to ||u0||_2, so the window is
    // computed once and reused verbatim.
    WindowInputs in;
    in.data_norm = l2_norm(u0);
    in.constant = opts.constant;
    double T = std::min(existence_window(in, eq, rule).T, opts.window_cap);

    GlobalResult res;
    res.window = T;
    Field current = u0;
    double t = u0.time_tag;
    const double t_end = u0.time_tag + horizon;
    res.trajectory.append(t, current);
    res.mass.push_back(l2_norm(current));
    res.mass.back() *= res.mass.back();
    while (t < t_end - 1e-12 * std::max(1.0, t_end)) {
        double Tk = std::min(T, t_end - t);
        PicardResult step = picard_local_solve(current, eq, Tk, opts.picard);
        if (!step.converged)
            throw std::runtime_error("global evolve: window solve failed: " +
                                     step.abort_reason);
        for (std::size_t j = 1; j < step.trajectory.size(); ++j)
            res.trajectory.append(step.trajectory.times[j],
                                  step.trajectory.states[j]);
        current = res.trajectory.states.back();
        t = res.trajectory.times.back();
        res.window_lengths.push_back(Tk);
        res.window_ratios.push_back(step.contraction_ratio);
        double m = l2_norm(current);
        res.mass.push_back(m * m);
        if (res.window_lengths.size() > 1000000)
            throw std::runtime_error("global evolve: window budget exhausted");
    }
    return res;
}

namespace {

Field nonlinear_phase_step(const Field& u, const EquationSpec& eq, double h) {
    Field out(u.grid, u.time_tag);
    const double c = eq.sign * eq.coupling * h;
    if (eq.kind == NonlinearityKind::power) {
        for (std::size_t i = 0; i < u.values.size(); ++i) {
            double a = std::abs(u.values[i]);
            out.values[i] = u.values[i] * std::polar(1.0, c * std::pow(a, eq.alpha));
        }
    } else {
        Field density(u.grid);
        for (std::size_t i = 0; i < u.values.size(); ++i)
            density.values[i] = std::norm(u.values[i]);
        Field pot = riesz_convolve(density, eq.nu);
        for (std::size_t i = 0; i < u.values.size(); ++i)
            out.values[i] =
                u.values[i] * std::polar(1.0, c * pot.values[i].real());
    }
    return out;
}

}  // namespace

Field split_step(const Field& u, const EquationSpec& eq, double h) {
    eq.validate_raw();
    if (!(h > 0.0)) throw std::invalid_argument("split_step: h must be positive");
    Dispersion beta(eq.beta);
    Field half = apply_propagator(u, beta, 0.5 * h);
    if (eq.coupling != 0.0) half = nonlinear_phase_step(half, eq, h);
    Field out = apply_propagator(half, beta, 0.5 * h);
    out.time_tag = u.time_tag + h;
    return out;
}

Trajectory evolve_split_step(const Field& u0, const EquationSpec& eq, double h,
                             int steps, int snapshot_stride) {
    eq.validate_raw();
    if (!(h > 0.0) || steps < 1)
        throw std::invalid_argument("evolve_split_step: bad step budget");
    snapshot_stride = std::max(1, snapshot_stride);
    const GridPtr& grid = u0.grid;
    std::vector<cplx> half_mult =
        propagator_multiplier(*grid, eq.beta, 0.5 * h);
    Trajectory traj;
    traj.append(u0.time_tag, u0);
    Field current = u0;
    for (int s = 1; s <= steps; ++s) {
        Field stage = apply_spectral_multiplier(current,
                                                std::span<const cplx>(half_mult));
        if (eq.coupling != 0.0) stage = nonlinear_phase_step(stage, eq, h);
        current = apply_spectral_multiplier(stage,
                                            std::span<const cplx>(half_mult));
        current.time_tag = u0.time_tag + s * h;
        if (s % 16 == 0 || s == steps) {
            if (!all_finite(current)) {
                std::ostringstream os;
                os << "split-step evolution lost finiteness at step " << s
                   << " (t = " << current.time_tag << ")";
                throw std::runtime_error(os.str());
            }
        }
        if (s % snapshot_stride == 0 || s == steps)
            traj.append(current.time_tag, current);
    }
    return traj;
}

SpaceTimeNorm spacetime_norm(const Trajectory& traj, double q, double r,
                             double T) {
    if (traj.size() < 3)
        throw std::invalid_argument("spacetime_norm: need at least 3 snapshots");
    const double t0 = traj.times.front();
    const double eps = 1e-9 * std::max(1.0, T);
    std::vector<double> ts;
    std::vector<double> vals;
    for (std::size_t i = 0; i < traj.size(); ++i) {
        double rel = traj.times[i] - t0;
        if (rel <= T + eps) {
            ts.push_back(rel);
            vals.push_back(lp_norm(traj.states[i], r));
        }
    }
    if (ts.size() < 3)
        throw std::invalid_argument(
            "spacetime_norm: fewer than 3 snapshots inside [0, T]");
    auto evaluate = [&](std::size_t stride) {
        if (std::isinf(q)) {
            double m = 0.0;
            for (std::size_t i = 0; i < vals.size(); i += stride)
                m = std::max(m, vals[i]);
            m = std::max(m, vals.back());
            return m;
        }
        double acc = 0.0;
        std::size_t prev = 0;
        for (std::size_t i = stride; i < vals.size(); i += stride) {
            double dt = ts[i] - ts[prev];
            acc += 0.5 * dt * (std::pow(vals[prev], q) + std::pow(vals[i], q));
            prev = i;
        }
        if (prev != vals.size() - 1) {
            std::size_t i = vals.size() - 1;
            double dt = ts[i] - ts[prev];
            acc += 0.5 * dt * (std::pow(vals[prev], q) + std::pow(vals[i], q));
        }
        return std::pow(acc, 1.0 / q);
    };
    SpaceTimeNorm out;
    out.value = evaluate(1);
    if (vals.size() >= 5) out.error_estimate = std::abs(out.value - evaluate(2));
    return out;
}

double iteration_space_norm(const Trajectory& traj, const EquationSpec& eq,
                            double T) {
    double sup_l2 = 0.0;
    for (const Field& f : traj.states) sup_l2 = std::max(sup_l2, l2_norm(f));
    double q, r;
    if (eq.kind == NonlinearityKind::power) {
        Exponents ex = compute_exponents(eq, 2.5);
        q = 1.0 / ex.kappa;
        r = eq.alpha + 2.0;
    } else {
        Exponents ex = compute_exponents(eq, 2.05);
        q = 4.0 / ex.theta;
        r = 4.0 * eq.n / (2.0 * eq.n - eq.nu);
    }
    double st = spacetime_norm(traj, q, r, T).value;
    return std::max(sup_l2, st);
}

double calibrate_window_constant(const Field& u0, const EquationSpec& eq,
                                 double target_ratio,
                                 const PicardOptions& opts, double lo,
                                 double hi) {
    WindowRule rule = eq.kind == NonlinearityKind::power
                          ? WindowRule::tchoice
                          : WindowRule::tilde_tchoice;
    double norm0 = l2_norm(u0);
    PicardOptions probe = opts;
    probe.throw_on_noncontraction = false;
    probe.max_iter = std::min(opts.max_iter, 30);
    auto ratio_at = [&](double c) {
        WindowInputs in;
        in.data_norm = norm0;
        in.constant = c;
        double T = existence_window(in, eq, rule).T;
        PicardResult r = picard_local_solve(u0, eq, T, probe);
        if (!r.converged) return std::numeric_limits<double>::infinity();
        return r.contraction_ratio;
    };
    if (ratio_at(hi) <= target_ratio) return hi;
    if (ratio_at(lo) > target_ratio)
        throw std::runtime_error(
            "window calibration failed: no contraction at the smallest constant");
    double llo = std::log(lo), lhi = std::log(hi);
    for (int it = 0; it < 10; ++it) {
        double mid = 0.5 * (llo + lhi);
        if (ratio_at(std::exp(mid)) <= target_ratio)
            llo = mid;
        else
            lhi = mid;
    }
    return std::exp(llo);
}

}  // namespace fnls
