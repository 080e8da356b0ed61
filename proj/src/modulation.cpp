#include "fnlslab/modulation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "fft_internal.hpp"
#include "fnlslab/parallel.hpp"

namespace fnls {

double holder_conjugate(double p) {
    if (std::isinf(p)) return 1.0;
    if (!(p >= 1.0)) throw std::invalid_argument("conjugate requires p >= 1");
    if (p == 1.0) return std::numeric_limits<double>::infinity();
    return p / (p - 1.0);
}

ModNormSpec::ModNormSpec(double p_, double q_) : p(p_), q(q_) {
    if (!(p >= 1.0) || !(q >= 1.0))
        throw std::invalid_argument("modulation exponents must be >= 1");
}

namespace {

// Quintic smoothstep transition: 1 on [0,1/2], 0 on [1,inf).
double bump_1d(double s) {
    s = std::abs(s);
    if (s <= 0.5) return 1.0;
    if (s >= 1.0) return 0.0;
    double t = 2.0 * (s - 0.5);
    double t3 = t * t * t;
    return 1.0 - t3 * (10.0 + t * (-15.0 + 6.0 * t));
}

double bump(std::span<const double> xi_minus_k) {
    double m = 0.0;
    for (double v : xi_minus_k) m = std::max(m, std::abs(v));
    return bump_1d(m);
}

}  // namespace

ModulationPartition::ModulationPartition(GridPtr grid) : grid_(std::move(grid)) {
    const Grid& g = *grid_;
    // Need >= 4 frequency samples per unit interval to resolve unit boxes.
    if (2.0 * g.half_extent() < 4.0)
        throw std::invalid_argument(
            "partition: fewer than 4 frequency samples per unit interval "
            "(increase the half-extent)");
    k_max_ = static_cast<int>(std::floor(0.25 * g.points() / g.half_extent())) + 1;
    if (k_max_ < 4)
        throw std::invalid_argument(
            "partition: frequency band too narrow (k_max < 4)");
    pieces_ = 1;
    for (int a = 0; a < g.dim(); ++a)
        pieces_ *= static_cast<std::size_t>(2 * k_max_ + 1);

    // Partition-of-unity denominator on the whole lattice.
    denom_.resize(g.size());
    std::vector<int> idx(g.dim());
    std::vector<double> xi(g.dim());
    std::vector<double> off(g.dim());
    std::vector<int> lo(g.dim()), hi(g.dim()), l(g.dim());
    for (std::size_t i = 0; i < g.size(); ++i) {
        g.unflatten(i, idx.data());
        for (int a = 0; a < g.dim(); ++a) {
            xi[a] = g.frequency(idx[a]);
            lo[a] = static_cast<int>(std::ceil(xi[a] - 1.0));
            hi[a] = static_cast<int>(std::floor(xi[a] + 1.0));
        }
        double den = 0.0;
        l = lo;
        while (true) {
            for (int a = 0; a < g.dim(); ++a) off[a] = xi[a] - l[a];
            den += bump(off);
            int a = g.dim() - 1;
            while (a >= 0 && ++l[a] > hi[a]) l[a] = lo[a], --a;
            if (a < 0) break;
        }
        denom_[i] = den;  // >= 1: the nearest lattice point contributes 1
    }

    // Per-axis storage indices inside the support (k-1, k+1).
    axis_support_.resize(2 * k_max_ + 1);
    for (int k = -k_max_; k <= k_max_; ++k) {
        auto& list = axis_support_[k + k_max_];
        for (int i = 0; i < g.points(); ++i) {
            double d = g.frequency(i) - k;
            if (std::abs(d) < 1.0) list.push_back(i);
        }
    }
}

ModulationPartition build_partition(const GridPtr& grid) {
    return ModulationPartition(grid);
}

std::vector<int> ModulationPartition::piece_index(std::size_t ordinal) const {
    std::vector<int> k(grid_->dim());
    std::size_t width = static_cast<std::size_t>(2 * k_max_ + 1);
    for (int a = grid_->dim() - 1; a >= 0; --a) {
        k[a] = static_cast<int>(ordinal % width) - k_max_;
        ordinal /= width;
    }
    return k;
}

std::size_t ModulationPartition::piece_ordinal(std::span<const int> k) const {
    std::size_t width = static_cast<std::size_t>(2 * k_max_ + 1);
    std::size_t ord = 0;
    for (int a = 0; a < grid_->dim(); ++a) {
        if (std::abs(k[a]) > k_max_)
            throw std::invalid_argument("piece index outside the index set");
        ord = ord * width + static_cast<std::size_t>(k[a] + k_max_);
    }
    return ord;
}

const std::vector<int>& ModulationPartition::axis_support(int k) const {
    if (std::abs(k) > k_max_)
        throw std::invalid_argument("piece index outside the index set");
    return axis_support_[k + k_max_];
}

double ModulationPartition::sigma_value(std::span<const int> k,
                                        std::size_t flat) const {
    const Grid& g = *grid_;
    std::vector<int> idx(g.dim());
    g.unflatten(flat, idx.data());
    std::vector<double> off(g.dim());
    for (int a = 0; a < g.dim(); ++a)
        off[a] = g.frequency(idx[a]) - k[a];
    double num = bump(off);
    return num == 0.0 ? 0.0 : num / denom_[flat];
}

namespace {

// Shared worker: given the raw (unnormalized) forward DFT of f, write the
// piece's filtered spectrum into `spec` (pre-zeroed) and return the number of
// touched entries.  Frequencies never wrap, so the support is a product of
// per-axis index lists.
std::size_t fill_piece_spectrum(const Grid& g, const ModulationPartition& part,
                                std::span<const int> k,
                                const std::vector<cplx>& raw_spec,
                                std::vector<cplx>& spec,
                                std::vector<std::size_t>& touched) {
    int dim = g.dim();
    const std::vector<int>* lists[3] = {nullptr, nullptr, nullptr};
    for (int a = 0; a < dim; ++a) lists[a] = &part.axis_support(k[a]);
    std::size_t count = 0;
    std::vector<int> idx(dim);
    std::vector<double> off(dim);
    // Iterate the support box.
    std::vector<std::size_t> pos(dim, 0);
    if (dim >= 1 && lists[0]->empty()) return 0;
    for (int a = 0; a < dim; ++a)
        if (lists[a]->empty()) return 0;
    while (true) {
        for (int a = 0; a < dim; ++a) idx[a] = (*lists[a])[pos[a]];
        std::size_t flat = g.flatten(idx.data());
        for (int a = 0; a < dim; ++a) off[a] = g.frequency(idx[a]) - k[a];
        double num = bump(off);
        if (num != 0.0) {
            spec[flat] = raw_spec[flat] * (num / part.denominator(flat));
            touched[count++] = flat;
        }
        int a = dim - 1;
        while (a >= 0 && ++pos[a] >= lists[a]->size()) pos[a] = 0, --a;
        if (a < 0) break;
    }
    return count;
}

}  // namespace

Field ModulationPartition::box_piece(const Field& f,
                                     std::span<const int> k) const {
    const Grid& g = *grid_;
    if (!same_grid(g, *f.grid))
        throw std::invalid_argument("box_piece: field grid mismatch");
    piece_ordinal(k);  // validates membership
    std::vector<cplx> raw(g.size());
    detail::dft(g.dim(), g.points(), f.values.data(), raw.data(), true);
    std::vector<cplx> spec(g.size(), cplx(0.0, 0.0));
    std::vector<std::size_t> touched(g.size());
    fill_piece_spectrum(g, *this, k, raw, spec, touched);
    Field out(f.grid, f.time_tag);
    detail::dft(g.dim(), g.points(), spec.data(), out.values.data(), false);
    double inv_total = 1.0 / static_cast<double>(g.size());
    for (cplx& v : out.values) v *= inv_total;
    return out;
}

std::vector<double> ModulationPartition::piece_lp_norms(const Field& f,
                                                        double p,
                                                        int threads) const {
    const Grid& g = *grid_;
    if (!same_grid(g, *f.grid))
        throw std::invalid_argument("piece_lp_norms: field grid mismatch");
    std::vector<cplx> raw(g.size());
    detail::dft(g.dim(), g.points(), f.values.data(), raw.data(), true);
    std::vector<double> norms(pieces_, 0.0);
    double measure = std::pow(g.dx(), g.dim());
    double inv_total = 1.0 / static_cast<double>(g.size());
    parallel_for(threads, pieces_, [&](std::size_t ord) {
        std::vector<int> k = piece_index(ord);
        std::vector<cplx> spec(g.size(), cplx(0.0, 0.0));
        std::vector<std::size_t> touched(g.size());
        std::size_t cnt = fill_piece_spectrum(g, *this, k, raw, spec, touched);
        if (cnt == 0) {
            norms[ord] = 0.0;
            return;
        }
        std::vector<cplx> piece(g.size());
        detail::dft(g.dim(), g.points(), spec.data(), piece.data(), false);
        if (std::isinf(p)) {
            double m = 0.0;
            for (const cplx& v : piece) m = std::max(m, std::abs(v));
            norms[ord] = m * inv_total;
        } else {
            double s = 0.0;
            for (const cplx& v : piece) s += std::pow(std::abs(v) * inv_total, p);
            norms[ord] = std::pow(s * measure, 1.0 / p);
        }
    });
    return norms;
}

Field box_piece(const Field& f, const ModulationPartition& part,
                std::span<const int> k) {
    return part.box_piece(f, k);
}

double mod_norm(const Field& f, const ModulationPartition& part,
                const ModNormSpec& spec, int threads) {
    std::vector<double> norms = part.piece_lp_norms(f, spec.p, threads);
    if (std::isinf(spec.q)) {
        double m = 0.0;
        for (double v : norms) m = std::max(m, v);
        return m;
    }
    double s = 0.0;
    for (double v : norms) s += std::pow(v, spec.q);
    return std::pow(s, 1.0 / spec.q);
}

double embedding_check(const NormRef& source, const NormRef& target,
                       std::span<const Field> family,
                       const ModulationPartition& part, int threads) {
    if (family.empty())
        throw std::invalid_argument("embedding_check: empty sample family");
    if (source.p != target.p)
        throw std::invalid_argument(
            "embedding_check: only equal Lebesgue exponents are supported");
    double p = source.p;
    double pc = holder_conjugate(p);
    const double tol = 1e-12;
    if (source.kind == NormKind::modulation && target.kind == NormKind::lebesgue) {
        if (source.q > std::min(p, pc) + tol)
            throw std::invalid_argument(
                "embedding hypothesis violated: M^{p,q} -> L^p needs q <= min{p,p'}");
    } else if (source.kind == NormKind::lebesgue &&
               target.kind == NormKind::modulation) {
        if (target.q < std::max(p, pc) - tol)
            throw std::invalid_argument(
                "embedding hypothesis violated: L^p -> M^{p,q} needs q >= max{p,p'}");
    } else if (source.kind == NormKind::modulation &&
               target.kind == NormKind::modulation) {
        if (source.q > target.q + tol)
            throw std::invalid_argument(
                "embedding hypothesis violated: M^{p,q1} -> M^{p,q2} needs q1 <= q2");
    }
    double worst = 0.0;
    for (const Field& f : family) {
        double num = target.kind == NormKind::lebesgue
                         ? lp_norm(f, target.p)
                         : mod_norm(f, part, ModNormSpec(target.p, target.q),
                                    threads);
        double den = source.kind == NormKind::lebesgue
                         ? lp_norm(f, source.p)
                         : mod_norm(f, part, ModNormSpec(source.p, source.q),
                                    threads);
        if (den == 0.0) continue;
        worst = std::max(worst, num / den);
    }
    return worst;
}

}  // namespace fnls
