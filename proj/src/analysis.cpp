#include "fnlslab/analysis.hpp"

#include <cmath>
#include <stdexcept>

#include "fnlslab/parallel.hpp"
#include "fnlslab/propagator.hpp"
#include "solver_internal.hpp"

namespace fnls {

std::optional<double> admissible_q(double r, double beta, int n) {
    if (!(r >= 2.0)) return std::nullopt;
    double slope = n * (0.5 - 1.0 / r);
    double q;
    if (slope == 0.0) {
        q = std::numeric_limits<double>::infinity();
        if (n == 2) return std::nullopt;  // endpoint exclusion (inf, 2, 2)
    } else {
        q = beta / slope;
    }
    if (!(q >= 2.0)) return std::nullopt;
    return q;
}

double admissibility_residual(const AdmissiblePair& pair, double beta, int n) {
    double lhs = std::isinf(pair.q) ? 0.0 : beta / pair.q;
    return lhs - n * (0.5 - 1.0 / pair.r);
}

namespace {

void require_admissible(const AdmissiblePair& pair, double beta, int n) {
    if (pair.q < 2.0 || pair.r < 2.0 ||
        std::abs(admissibility_residual(pair, beta, n)) > 1e-10)
        throw std::invalid_argument("strichartz: pair is not admissible");
    if (std::isinf(pair.q) && pair.r == 2.0 && n == 2)
        throw std::invalid_argument(
            "strichartz: the endpoint (inf, 2) is excluded in two dimensions");
}

}  // namespace

StrichartzStats strichartz_homogeneous(std::span<const Field> family,
                                       double beta, const AdmissiblePair& pair,
                                       double T, int snapshots, int threads) {
    if (family.empty())
        throw std::invalid_argument("strichartz: empty sample family");
    require_admissible(pair, beta, family[0].grid->dim());
    if (snapshots < 3)
        throw std::invalid_argument("strichartz: need at least 3 snapshots");
    Dispersion disp(beta);
    StrichartzStats stats;
    stats.ratios.assign(family.size(), 0.0);
    parallel_for(threads, family.size(), [&](std::size_t s) {
        const Field& u0 = family[s];
        double base = l2_norm(u0);
        if (base == 0.0) return;
        Trajectory traj;
        for (int j = 0; j < snapshots; ++j) {
            double t = T * j / (snapshots - 1);
            traj.append(t, apply_propagator(u0, disp, t));
        }
        stats.ratios[s] = spacetime_norm(traj, pair.q, pair.r, T).value / base;
    });
    double sum = 0.0;
    for (double v : stats.ratios) {
        stats.max_ratio = std::max(stats.max_ratio, v);
        sum += v;
    }
    stats.mean_ratio = sum / static_cast<double>(stats.ratios.size());
    return stats;
}

StrichartzStats strichartz_inhomogeneous(std::span<const Field> family,
                                         double beta,
                                         const AdmissiblePair& lhs,
                                         const AdmissiblePair& rhs, double T,
                                         int subintervals, int threads) {
    if (family.empty())
        throw std::invalid_argument("strichartz: empty sample family");
    int n = family[0].grid->dim();
    require_admissible(lhs, beta, n);
    require_admissible(rhs, beta, n);
    Dispersion disp(beta);
    WindowMesh mesh = WindowMesh::uniform(T, subintervals);
    double q2c = holder_conjugate(rhs.q);
    double r2c = holder_conjugate(rhs.r);
    StrichartzStats stats;
    stats.ratios.assign(family.size(), 0.0);
    parallel_for(threads, family.size(), [&](std::size_t s) {
        const Field& g0 = family[s];
        double w = 1.0 + 2.0 * static_cast<double>(s % 5);
        std::vector<Field> forcing;
        forcing.reserve(mesh.times.size());
        for (double t : mesh.times)
            forcing.push_back(scaled(apply_propagator(g0, disp, t),
                                     cplx(std::cos(w * t), 0.0)));
        Trajectory norm_traj;
        for (std::size_t j = 0; j < forcing.size(); ++j)
            norm_traj.append(mesh.times[j], forcing[j]);
        std::vector<Field> duh =
            detail::duhamel_integral(g0.grid, beta, mesh, forcing);
        Trajectory dtraj;
        for (std::size_t j = 0; j < duh.size(); ++j)
            dtraj.append(mesh.times[j], duh[j]);
        double num = spacetime_norm(dtraj, lhs.q, lhs.r, T).value;
        double den = spacetime_norm(norm_traj, q2c, r2c, T).value;
        if (den > 0.0) stats.ratios[s] = num / den;
    });
    double sum = 0.0;
    for (double v : stats.ratios) {
        stats.max_ratio = std::max(stats.max_ratio, v);
        sum += v;
    }
    stats.mean_ratio = sum / static_cast<double>(stats.ratios.size());
    return stats;
}

}  // namespace fnls
