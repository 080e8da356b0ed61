#ifndef FNLSLAB_SOLVER_HPP
#define FNLSLAB_SOLVER_HPP

#include <functional>
#include <string>
#include <vector>

#include "fnlslab/exponents.hpp"
#include "fnlslab/grid.hpp"
#include "fnlslab/nonlinearity.hpp"

namespace fnls {

enum class WindowRule { tchoice, tilde_tchoice, c1c2c3, d1d2d3 };

struct WindowInputs {
    double data_norm = 0.0;  // ||phi||_2 + ||psi||_M (c/D rules) or the
                             // sum-space norm of the datum (tchoice rules)
    double psi_norm = 0.0;   // ||psi||_M, used by the third condition
    double constant = 1.0;   // calibration constant C
};

/// Local existence window: the minimum of the rule's conditions, capped at 1.
struct ExistenceWindow {
    double T = 1.0;
    WindowRule rule = WindowRule::tchoice;
    WindowInputs inputs;
    double cap_bound = 1.0;
    double data_bound = 0.0;  // second condition's bound
    double psi_bound = 0.0;   // third condition's bound (c/D rules; else inf)
};

ExistenceWindow existence_window(const WindowInputs& inputs,
                                 const EquationSpec& eq, WindowRule rule);

/// Uniform time mesh on [0, T] with an even number of subintervals; the
/// Duhamel quadrature is cumulative Simpson on this mesh.
struct WindowMesh {
    double length = 0.0;
    int subintervals = 16;
    std::vector<double> times;

    static WindowMesh uniform(double T, int subintervals);
};

struct Trajectory {
    std::vector<double> times;
    std::vector<Field> states;

    std::size_t size() const { return times.size(); }
    void append(double t, Field f);
};

struct PicardOptions {
    double tol = 1e-9;
    int max_iter = 40;
    int subintervals = 16;
    bool throw_on_noncontraction = true;
};

struct PicardResult {
    Trajectory trajectory;
    std::vector<double> updates;        // sup-over-mesh L2 update per iteration
    std::vector<double> updates_xnorm;  // max{sup L2, L^{1/kappa}_T L^{alpha+2}}
    std::vector<double> ratios;
    double contraction_ratio = 0.0;  // geometric mean above the noise floor
    int iterations = 0;
    bool converged = false;
    std::string abort_reason;
};

/// Duhamel--Picard fixed point of
///   u(t) = U_beta(t) u0 + i sign c \int_0^t U_beta(t-s) F(u(s)) ds
/// on a stored mesh over [0, T].  Aborts (or flags) "window too large" after
/// three consecutive non-contracting iterations.
PicardResult picard_local_solve(const Field& u0, const EquationSpec& eq,
                                double T, const PicardOptions& opts = {});

struct GlobalOptions {
    double constant = 1.0;   // window-rule constant C
    double window_cap = 1.0; // additional cap on the window length
    PicardOptions picard;
};

struct GlobalResult {
    Trajectory trajectory;
    double window = 0.0;                 // the constant window length
    std::vector<double> window_lengths;  // actual lengths (last may truncate)
    std::vector<double> window_ratios;   // contraction ratio per window
    std::vector<double> mass;            // squared L2 at window boundaries
};

/// Window-by-window global evolution.  The window comes from the tchoice /
/// tilde-tchoice rule evaluated once on ||u0||_2: the flow conserves mass, so
/// the window is constant across steps by construction.
GlobalResult l2_global_evolve(const Field& u0, const EquationSpec& eq,
                              double horizon, const GlobalOptions& opts = {});

/// One Strang step: U(h/2), exact nonlinear phase, U(h/2).  Both
/// nonlinearities preserve |u| pointwise on the substep, so every substep is
/// an exact isometry up to round-off.
Field split_step(const Field& u, const EquationSpec& eq, double h);

/// Repeated Strang steps, keeping every `snapshot_stride`-th state (and the
/// last).  Aborts with a diagnostic when a state stops being finite.
Trajectory evolve_split_step(const Field& u0, const EquationSpec& eq, double h,
                             int steps, int snapshot_stride = 1);

struct SpaceTimeNorm {
    double value = 0.0;
    double error_estimate = 0.0;  // coarse-mesh comparison
};

/// ||u||_{L^q_T L^r} by trapezoid over snapshots with times in [0, T];
/// q = inf is the sup over snapshots.  Requires at least 3 snapshots.
SpaceTimeNorm spacetime_norm(const Trajectory& traj, double q, double r,
                             double T);

/// max{ sup_t L^2, L^q_T L^r } with (q, r) = (1/kappa, alpha+2) for power and
/// (4/theta, 4n/(2n-nu)) for Hartree: the iteration-space norm used for
/// Picard reporting.
double iteration_space_norm(const Trajectory& traj, const EquationSpec& eq,
                            double T);

/// Largest constant C (within [lo, hi], factor-1.05 resolution) whose
/// tchoice-rule window keeps the Picard contraction ratio at or below
/// `target_ratio` for this datum.
double calibrate_window_constant(const Field& u0, const EquationSpec& eq,
                                 double target_ratio = 0.5,
                                 const PicardOptions& opts = {},
                                 double lo = 1.0 / 64.0, double hi = 64.0);

}  // namespace fnls

#endif
