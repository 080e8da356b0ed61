#ifndef FNLSLAB_ANALYSIS_HPP
#define FNLSLAB_ANALYSIS_HPP

#include <optional>
#include <span>
#include <vector>

#include "fnlslab/grid.hpp"
#include "fnlslab/solver.hpp"

namespace fnls {

/// beta-fractional admissible pair: beta/q = n (1/2 - 1/r), q, r >= 2,
/// (q, r, n) != (inf, 2, 2).
struct AdmissiblePair {
    double q = 2.0;
    double r = 2.0;
};

/// Solves the admissibility relation for q given r; empty when q < 2 or the
/// endpoint exclusion (inf, 2, 2) triggers.
std::optional<double> admissible_q(double r, double beta, int n);

/// Residual beta/q - n (1/2 - 1/r) of a pair (0 for admissible ones).
double admissibility_residual(const AdmissiblePair& pair, double beta, int n);

struct StrichartzStats {
    double max_ratio = 0.0;
    double mean_ratio = 0.0;
    std::vector<double> ratios;
};

/// ||U_beta(.) u0||_{L^q_T L^r} / ||u0||_{L^2} over a sample family,
/// homogeneous estimate.  Snapshots are uniform on [0, T].
StrichartzStats strichartz_homogeneous(std::span<const Field> family,
                                       double beta, const AdmissiblePair& pair,
                                       double T, int snapshots,
                                       int threads = 1);

/// Retarded estimate: the Duhamel integral of the known forcing
/// F_g(t) = cos(w_g t) U_beta(t) g, measured as
/// ||Duhamel(F)||_{L^{q1}_T L^{r1}} / ||F||_{L^{q2'}_T L^{r2'}}.
StrichartzStats strichartz_inhomogeneous(std::span<const Field> family,
                                         double beta,
                                         const AdmissiblePair& lhs,
                                         const AdmissiblePair& rhs, double T,
                                         int subintervals, int threads = 1);

}  // namespace fnls

#endif
