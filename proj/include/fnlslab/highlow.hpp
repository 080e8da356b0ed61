#ifndef FNLSLAB_HIGHLOW_HPP
#define FNLSLAB_HIGHLOW_HPP

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "fnlslab/modulation.hpp"
#include "fnlslab/solver.hpp"

namespace fnls {

/// Constructive high-low split of a datum: low = sharp radial frequency
/// cutoff at `cutoff_radius`, high = remainder.  The cutoff is calibrated so
/// the measured M^{r,r'} norm of the high part lands on
/// ||u||_{M^{p,p'}} / N (smallest shell radius reaching the target); the
/// N^gamma bound on the low part is then verified by the caller, not imposed.
struct SplitResult {
    Field low;
    Field high;
    double split_parameter = 0.0;  // N
    double gamma = 0.0;            // (1/2 - 1/p) / (1/p - 1/r)
    double cutoff_radius = 0.0;
    double low_l2 = 0.0;
    double high_mod = 0.0;    // ||high||_{M^{r,r'}}
    double source_mod = 0.0;  // ||u||_{M^{p,p'}}
    double target_high_mod = 0.0;
};

SplitResult split_data(const Field& u, double p, double r, double N,
                       const ModulationPartition& part, int threads = 1);

struct InteractionOptions {
    double tol = 1e-9;
    int max_iter = 60;
    bool throw_on_noncontraction = true;
};

struct InteractionResult {
    Trajectory w;
    double w_end_l2 = 0.0;
    double w_sup_l2 = 0.0;
    double contraction_ratio = 0.0;
    int iterations = 0;
    bool converged = false;
    std::string abort_reason;
};

/// Solves the two-term difference equation for the interaction part w on the
/// window mesh, given the low evolution v at mesh times and the high datum
/// psi at the window start.  Picard starts from w = 0 and is gated by the
/// iteration-space norm of the update.
InteractionResult solve_interaction(const std::vector<Field>& v_states,
                                    const Field& psi, const EquationSpec& eq,
                                    const WindowMesh& mesh,
                                    const InteractionOptions& opts = {});

struct LedgerStep {
    int k = 0;
    double t_start = 0.0, t_end = 0.0, window = 0.0;
    double phi_l2 = 0.0;
    double w_end_l2 = 0.0;
    double w_sup_l2 = 0.0;
    double psi_mod = 0.0;
    bool cond_cap_ok = true, cond_data_ok = true, cond_psi_ok = true;
    double cond_data_bound = 0.0, cond_psi_bound = 0.0;
    double v_ratio = 0.0, w_ratio = 0.0;
    double composed_gap = -1.0;  // vs the split-step reference; -1 = skipped
};

struct IterationLedger {
    std::vector<LedgerStep> steps;
    double split_parameter = 0.0;
    double gamma = 0.0;
    double window = 0.0;
    double constant = 1.0;  // C used in T(N) and the conditions
    double horizon_target = 0.0;
    double achieved_horizon = 0.0;
    double phi0_l2 = 0.0, psi0_mod = 0.0, source_mod = 0.0, cutoff_radius = 0.0;
    double predicted_horizon_exponent = 0.0;
    double growth_ratio_max = 0.0;  // max_k ||phi_k|| / (N^g + T^e k / N)
    double growth_constant = 0.0;   // configured ceiling for the above
    bool growth_bound_ok = false;
    bool completed = false;
    std::string stop_reason;
};

/// One CSV row per step; column order:
/// step,t_start,t_end,window,phi_l2,w_end_l2,w_sup_l2,psi_mod,
/// cond_cap_ok,cond_data_ok,cond_psi_ok,cond_data_bound,cond_psi_bound,
/// v_ratio,w_ratio,composed_gap
void ledger_to_csv(const IterationLedger& ledger, std::ostream& os);

struct BourgainOptions {
    double constant = 1.0;
    bool auto_calibrate = false;  // bisect the largest C contracting at k = 0
    double calib_target = 0.5;
    int k_max = 64;
    double growth_constant = 10.0;
    PicardOptions picard;
    InteractionOptions interaction;
    int mod_threads = 1;
    bool composed_check = true;
    int reference_substeps = 256;  // split-step reference steps per window
};

/// Full high-low iteration: split, window length (3 C N^gamma)^{-alpha/omega}
/// (power) or (3 C N^gamma~)^{-2/(1-theta)} (Hartree), then per window evolve
/// the low part, solve the interaction term, recombine, and record every norm
/// and window condition.  Condition failures are data, not errors.
IterationLedger bourgain_iterate(const Field& u0, const EquationSpec& eq,
                                 double p_or_s, double N, double horizon,
                                 const ModulationPartition& part,
                                 const BourgainOptions& opts = {});

struct GammaRangeReport {
    double gamma = 0.0;
    double gamma_upper = 0.0;
    double horizon_exponent = 0.0;
    bool horizon_positive = false;
    double index_max = 0.0;  // p_max or s_max
    bool index_in_range = false;
    bool consistent = false;  // (index in range) == (horizon exponent > 0)
};

GammaRangeReport check_gamma_range(const EquationSpec& eq, double p_or_s);

}  // namespace fnls

#endif
