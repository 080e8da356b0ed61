#include "fnlslab/grid.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "fft_internal.hpp"

namespace fnls {

namespace {

bool power_of_two(int m) { return m > 0 && (m & (m - 1)) == 0; }

// (-1)^{sum of storage indices}: the phase difference between the FFT
// convention (origin at array start) and the lattice convention (origin at
// the array center).  Identical in space and frequency since M is even.
inline double center_sign(const Grid& g, std::size_t flat) {
    int s = 0;
    for (int a = 0; a < g.dim(); ++a) {
        s += static_cast<int>(flat % g.points());
        flat /= g.points();
    }
    return (s & 1) ? -1.0 : 1.0;
}

}  // namespace

Grid::Grid(int dim, double half_extent, int points_per_axis)
    : dim_(dim), half_extent_(half_extent), points_(points_per_axis) {
    if (dim < 1 || dim > 3)
        throw std::invalid_argument("grid dimension must be 1, 2 or 3");
    if (!(half_extent > 0.0))
        throw std::invalid_argument("grid half-extent must be positive");
    if (points_per_axis % 2 != 0)
        throw std::invalid_argument("points per axis must be even");
    if (!power_of_two(points_per_axis) || points_per_axis < 8)
        throw std::invalid_argument(
            "points per axis must be a power of two >= 8");
    dx_ = 2.0 * half_extent_ / points_;
    dxi_ = 0.5 / half_extent_;
    size_ = 1;
    for (int a = 0; a < dim_; ++a) size_ *= static_cast<std::size_t>(points_);
}

GridPtr make_grid(int dim, double half_extent, int points_per_axis) {
    return std::make_shared<const Grid>(dim, half_extent, points_per_axis);
}

bool same_grid(const Grid& a, const Grid& b) {
    return a.dim() == b.dim() && a.points() == b.points() &&
           a.half_extent() == b.half_extent();
}

bool all_finite(const Field& f) {
    for (const cplx& v : f.values)
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) return false;
    return true;
}

Field forward_transform(const Field& f) {
    // f_hat(xi_k) = dx^n (-1)^{sum k_a} DFT(f)[k]: the sign carries the
    // spatial origin sitting at the array center.
    const Grid& g = *f.grid;
    Field out(f.grid, f.time_tag);
    detail::dft(g.dim(), g.points(), f.values.data(), out.values.data(), true);
    double measure = std::pow(g.dx(), g.dim());
    for (std::size_t i = 0; i < g.size(); ++i)
        out.values[i] *= measure * center_sign(g, i);
    return out;
}

Field inverse_transform(const Field& F) {
    const Grid& g = *F.grid;
    Field out(F.grid, F.time_tag);
    std::vector<cplx> tmp(g.size());
    for (std::size_t i = 0; i < g.size(); ++i)
        tmp[i] = F.values[i] * center_sign(g, i);
    detail::dft(g.dim(), g.points(), tmp.data(), out.values.data(), false);
    double measure = std::pow(g.dxi(), g.dim());
    for (std::size_t i = 0; i < g.size(); ++i) out.values[i] *= measure;
    return out;
}

namespace {

// Diagonal multipliers need no centering phases (they cancel) and no measure
// factors (dx^n dxi^n M^n = 1), so the hot path is FFT -> scale -> IFFT/M^n.
template <typename T>
Field apply_multiplier_impl(const Field& f, std::span<const T> m) {
    const Grid& g = *f.grid;
    if (m.size() != g.size())
        throw std::invalid_argument("multiplier length does not match grid");
    Field out(f.grid, f.time_tag);
    std::vector<cplx> spec(g.size());
    detail::dft(g.dim(), g.points(), f.values.data(), spec.data(), true);
    double inv_total = 1.0 / static_cast<double>(g.size());
    for (std::size_t i = 0; i < g.size(); ++i) spec[i] *= m[i] * inv_total;
    detail::dft(g.dim(), g.points(), spec.data(), out.values.data(), false);
    return out;
}

}  // namespace

Field apply_spectral_multiplier(const Field& f, std::span<const cplx> m) {
    return apply_multiplier_impl<cplx>(f, m);
}

Field apply_spectral_multiplier(const Field& f, std::span<const double> m) {
    return apply_multiplier_impl<double>(f, m);
}

double l2_norm(const Field& f) {
    double s = 0.0;
    for (const cplx& v : f.values) s += std::norm(v);
    return std::sqrt(s * std::pow(f.grid->dx(), f.grid->dim()));
}

double lp_norm(const Field& f, double p) {
    if (!(p >= 1.0)) throw std::invalid_argument("lp_norm requires p >= 1");
    if (std::isinf(p)) {
        double m = 0.0;
        for (const cplx& v : f.values) m = std::max(m, std::abs(v));
        return m;
    }
    if (p == 2.0) return l2_norm(f);
    double s = 0.0;
    for (const cplx& v : f.values) s += std::pow(std::abs(v), p);
    return std::pow(s * std::pow(f.grid->dx(), f.grid->dim()), 1.0 / p);
}

cplx inner(const Field& f, const Field& g) {
    if (!same_grid(*f.grid, *g.grid))
        throw std::invalid_argument("inner: fields on different grids");
    cplx s(0.0, 0.0);
    for (std::size_t i = 0; i < f.values.size(); ++i)
        s += f.values[i] * std::conj(g.values[i]);
    return s * std::pow(f.grid->dx(), f.grid->dim());
}

double relative_l2_gap(const Field& f, const Field& g) {
    double ref = l2_norm(g);
    double gap = l2_norm(f - g);
    if (ref == 0.0) return gap == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
    return gap / ref;
}

Field operator+(const Field& a, const Field& b) {
    if (!same_grid(*a.grid, *b.grid))
        throw std::invalid_argument("field sum: grids differ");
    Field out(a.grid, a.time_tag);
    for (std::size_t i = 0; i < a.values.size(); ++i)
        out.values[i] = a.values[i] + b.values[i];
    return out;
}

Field operator-(const Field& a, const Field& b) {
    if (!same_grid(*a.grid, *b.grid))
        throw std::invalid_argument("field difference: grids differ");
    Field out(a.grid, a.time_tag);
    for (std::size_t i = 0; i < a.values.size(); ++i)
        out.values[i] = a.values[i] - b.values[i];
    return out;
}

Field scaled(const Field& a, cplx s) {
    Field out(a.grid, a.time_tag);
    for (std::size_t i = 0; i < a.values.size(); ++i)
        out.values[i] = a.values[i] * s;
    return out;
}

Field radial_profile(const GridPtr& grid, RadialKind kind,
                     const RadialParams& params) {
    const Grid& g = *grid;
    if (!(params.amplitude > 0.0) || !(params.width > 0.0) ||
        params.radius < 0.0)
        throw std::invalid_argument("radial_profile: parameters must be positive");
    if (params.width < 4.0 * g.dx())
        throw std::invalid_argument(
            "radial_profile: width under-resolved (< 4 dx)");
    Field out(grid);
    std::vector<int> idx(g.dim());
    for (std::size_t i = 0; i < g.size(); ++i) {
        g.unflatten(i, idx.data());
        double r2 = 0.0;
        for (int a = 0; a < g.dim(); ++a) {
            double x = g.coordinate(idx[a]);
            r2 += x * x;
        }
        double r = std::sqrt(r2);
        double v = 0.0;
        switch (kind) {
            case RadialKind::gaussian:
                v = std::exp(-std::numbers::pi * r2 /
                             (params.width * params.width));
                break;
            case RadialKind::sech_bump:
                v = 1.0 / std::cosh(r / params.width);
                break;
            case RadialKind::ring: {
                double d = r - params.radius;
                v = std::exp(-d * d / (2.0 * params.width * params.width));
                break;
            }
        }
        out.values[i] = params.amplitude * v;
    }
    // Torus-truncation guard: data must be negligible at the boundary.
    double peak = 0.0;
    for (const cplx& v : out.values) peak = std::max(peak, std::abs(v));
    double boundary = 0.0;
    for (std::size_t i = 0; i < g.size(); ++i) {
        g.unflatten(i, idx.data());
        bool on_face = false;
        for (int a = 0; a < g.dim(); ++a)
            if (idx[a] == 0) on_face = true;
        if (on_face) boundary = std::max(boundary, std::abs(out.values[i]));
    }
    if (boundary > 1e-10 * peak)
        throw std::invalid_argument(
            "radial_profile: datum does not decay at the torus boundary "
            "(boundary/peak > 1e-10); enlarge the half-extent");
    return out;
}

}  // namespace fnls
