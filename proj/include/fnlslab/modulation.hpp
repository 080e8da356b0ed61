#ifndef FNLSLAB_MODULATION_HPP
#define FNLSLAB_MODULATION_HPP

#include <span>
#include <vector>

#include "fnlslab/grid.hpp"

namespace fnls {

/// Holder conjugate p' with 1/p + 1/p' = 1 (p = 1 <-> inf).
double holder_conjugate(double p);

/// Exponents of an M^{p,q} norm.  The weight s is fixed to 0 here.
struct ModNormSpec {
    double p = 2.0;
    double q = 2.0;

    ModNormSpec() = default;
    ModNormSpec(double p_, double q_);
};

/// Frequency-uniform partition of unity on the grid's frequency band.
///
/// The bump is rho(xi) = S(|xi|_inf) with S a quintic smoothstep: S = 1 on
/// [0, 1/2], S = 0 on [1, inf).  Pieces are sigma_k = rho(.-k) / sum_l
/// rho(.-l), indexed by k in [-K, K]^n with K = floor(M/(4L)) + 1 so every
/// represented frequency is covered.
class ModulationPartition {
public:
    explicit ModulationPartition(GridPtr grid);

    const GridPtr& grid() const { return grid_; }
    int k_max() const { return k_max_; }
    std::size_t piece_count() const { return pieces_; }
    /// Lexicographic enumeration of the index set.
    std::vector<int> piece_index(std::size_t ordinal) const;
    std::size_t piece_ordinal(std::span<const int> k) const;

    /// sigma_k evaluated at the lattice point of a flat storage index.
    double sigma_value(std::span<const int> k, std::size_t flat) const;
    /// Partition-of-unity denominator at a flat storage index.
    double denominator(std::size_t flat) const { return denom_[flat]; }

    /// Storage indices (one axis) whose frequency lies in the open support
    /// (k-1, k+1) of a piece component k.
    const std::vector<int>& axis_support(int k) const;

    /// F^{-1}[sigma_k F f].
    Field box_piece(const Field& f, std::span<const int> k) const;

    /// L^p norms of every piece, in lexicographic piece order.  One forward
    /// transform total; per-piece inverse transforms may run on `threads`
    /// workers (slot-indexed, order-independent output).
    std::vector<double> piece_lp_norms(const Field& f, double p,
                                       int threads = 1) const;

private:
    GridPtr grid_;
    int k_max_;
    std::size_t pieces_;
    std::vector<double> denom_;
    std::vector<std::vector<int>> axis_support_;  // indexed by k + k_max
};

ModulationPartition build_partition(const GridPtr& grid);

Field box_piece(const Field& f, const ModulationPartition& part,
                std::span<const int> k);

/// ||f||_{M^{p,q}}: l^q over pieces of L^p piece norms (s = 0).
double mod_norm(const Field& f, const ModulationPartition& part,
                const ModNormSpec& spec, int threads = 1);

enum class NormKind { lebesgue, modulation };

struct NormRef {
    NormKind kind = NormKind::lebesgue;
    double p = 2.0;
    double q = 2.0;  // ignored for lebesgue
};

/// Worst ratio ||f||_target / ||f||_source over the family.  Validates the
/// embedding hypotheses (M^{p,q1} -> L^p needs q1 <= min{p,p'}; L^p ->
/// M^{p,q2} needs q2 >= max{p,p'}; M^{p,q1} -> M^{p,q2} needs q1 <= q2) and
/// throws on violation.
double embedding_check(const NormRef& source, const NormRef& target,
                       std::span<const Field> family,
                       const ModulationPartition& part, int threads = 1);

}  // namespace fnls

#endif
