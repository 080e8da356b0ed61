#ifndef FNLSLAB_GRID_HPP
#define FNLSLAB_GRID_HPP

#include <complex>
#include <memory>
#include <span>
#include <vector>

namespace fnls {

using cplx = std::complex<double>;

/// Isotropic periodic grid on [-L, L)^n with M points per axis (M a power of
/// two).  The frequency lattice is the discrete dual: spacing 1/(2L) in
/// cycles per unit length, so plane waves are e^{2 pi i xi.x} with xi on the
/// lattice.
class Grid {
public:
    Grid(int dim, double half_extent, int points_per_axis);

    int dim() const { return dim_; }
    double half_extent() const { return half_extent_; }
    int points() const { return points_; }
    double dx() const { return dx_; }
    /// Frequency-lattice spacing, 1/(2L).
    double dxi() const { return dxi_; }
    std::size_t size() const { return size_; }
    /// Largest represented |xi| per axis, M/(4L).
    double max_frequency() const { return 0.25 * points_ / half_extent_; }

    /// Signed integer mode for a storage index (FFT order: 0..M/2-1, then
    /// -M/2..-1).
    int wavenumber(int storage_index) const {
        return storage_index < points_ / 2 ? storage_index
                                           : storage_index - points_;
    }
    double frequency(int storage_index) const {
        return wavenumber(storage_index) * dxi_;
    }
    /// Spatial coordinate of a storage index, (i - M/2) * dx.
    double coordinate(int storage_index) const {
        return (storage_index - points_ / 2) * dx_;
    }
    /// Storage index holding frequency-lattice mode k (k in [-M/2, M/2)).
    int storage_index(int wavenumber) const {
        return wavenumber >= 0 ? wavenumber : wavenumber + points_;
    }

    void unflatten(std::size_t flat, int* idx) const {
        for (int a = dim_ - 1; a >= 0; --a) {
            idx[a] = static_cast<int>(flat % points_);
            flat /= points_;
        }
    }
    std::size_t flatten(const int* idx) const {
        std::size_t flat = 0;
        for (int a = 0; a < dim_; ++a) flat = flat * points_ + idx[a];
        return flat;
    }

private:
    int dim_;
    double half_extent_;
    int points_;
    double dx_;
    double dxi_;
    std::size_t size_;
};

using GridPtr = std::shared_ptr<const Grid>;

/// Validates n in {1,2,3}, M a power of two >= 8, L > 0.
GridPtr make_grid(int dim, double half_extent, int points_per_axis);

bool same_grid(const Grid& a, const Grid& b);

/// Complex field sampled on a Grid.  Values are immutable by convention:
/// operations return new fields.  time_tag carries the solver time.
struct Field {
    GridPtr grid;
    std::vector<cplx> values;
    double time_tag = 0.0;

    Field() = default;
    Field(GridPtr g, std::vector<cplx> v, double t = 0.0)
        : grid(std::move(g)), values(std::move(v)), time_tag(t) {}
    explicit Field(GridPtr g, double t = 0.0)
        : grid(std::move(g)), time_tag(t) {
        values.assign(grid->size(), cplx(0.0, 0.0));
    }
    std::size_t size() const { return values.size(); }
};

bool all_finite(const Field& f);

/// Forward transform returning true spectral samples f_hat(xi) on the
/// frequency lattice (FFT storage order; use Grid::wavenumber for the mode).
/// Normalized as a Riemann sum so the discrete Parseval identity holds.
Field forward_transform(const Field& f);
/// Exact inverse of forward_transform.
Field inverse_transform(const Field& F);

/// F^{-1}[m(xi) F f] for a multiplier sampled in storage order.
Field apply_spectral_multiplier(const Field& f, std::span<const cplx> m);
Field apply_spectral_multiplier(const Field& f, std::span<const double> m);

/// Samples m(xi) on the frequency lattice in storage order.  The callable
/// receives the frequency vector of length Grid::dim().
template <typename Fn>
std::vector<cplx> sample_multiplier(const Grid& g, Fn&& fn) {
    std::vector<cplx> m(g.size());
    std::vector<double> xi(g.dim());
    std::vector<int> idx(g.dim());
    for (std::size_t i = 0; i < g.size(); ++i) {
        g.unflatten(i, idx.data());
        for (int a = 0; a < g.dim(); ++a) xi[a] = g.frequency(idx[a]);
        m[i] = fn(xi.data());
    }
    return m;
}

double l2_norm(const Field& f);
/// Discrete L^p with the grid measure; p = inf is the max over samples.
double lp_norm(const Field& f, double p);
/// <f,g> = dx^n sum f conj(g).
cplx inner(const Field& f, const Field& g);
/// ||f - g||_2 / ||g||_2 (0 if both vanish).
double relative_l2_gap(const Field& f, const Field& g);

Field operator+(const Field& a, const Field& b);
Field operator-(const Field& a, const Field& b);
Field scaled(const Field& a, cplx s);

enum class RadialKind { gaussian, sech_bump, ring };

struct RadialParams {
    double amplitude = 1.0;
    double width = 1.0;   // gaussian/sech scale, or ring sigma
    double radius = 0.0;  // ring center radius
};

/// Radial datum generator.  Profiles depend on |x| only:
///   gaussian: A exp(-pi |x|^2 / w^2)
///   sech_bump: A sech(|x| / w)
///   ring:     A exp(-(|x| - r0)^2 / (2 w^2))
/// Rejects under-resolved widths (w < 4 dx) and data whose boundary value
/// exceeds 1e-10 of the peak (the torus must dominate the support).
Field radial_profile(const GridPtr& grid, RadialKind kind,
                     const RadialParams& params);

}  // namespace fnls

#endif
