#ifndef FNLSLAB_NONLINEARITY_HPP
#define FNLSLAB_NONLINEARITY_HPP

#include <string>
#include <vector>

#include "fnlslab/grid.hpp"

namespace fnls {

enum class NonlinearityKind { power, hartree };

/// One instance of the equation i u_t - (-Delta)^{beta/2} u + sign*c*F(u) = 0
/// with F either |u|^alpha u or (|x|^{-nu} * |u|^2) u.
struct EquationSpec {
    NonlinearityKind kind = NonlinearityKind::power;
    int n = 2;
    double beta = 1.5;
    double alpha = 1.0;    // power exponent (kind == power)
    double nu = 1.0;       // Riesz exponent (kind == hartree)
    int sign = -1;         // +1 focusing, -1 defocusing
    double coupling = 1.0; // 0 switches the nonlinearity off

    /// Loose validity for the raw evaluators (beta > 1/2 etc).  Throws.
    void validate_raw() const;
    /// Conditions required by the globalization experiments; returns one
    /// human-readable string per violated condition, empty when in scope.
    std::vector<std::string> theorem_violations() const;
    /// Lebesgue target of the iteration space: alpha+2 or 4n/(2n-nu).
    double target_lebesgue() const;
};

/// sign * |u|^alpha u, pointwise.
Field power_nl(const Field& u, double alpha, int sign);

/// Riesz-kernel Fourier pair constant c_{n,nu} =
/// pi^{nu - n/2} Gamma((n-nu)/2) / Gamma(nu/2).
double riesz_constant(int n, double nu);

/// |x|^{-nu} * g realized as the multiplier c_{n,nu} |xi|^{nu-n}.  The xi = 0
/// bin is zeroed: on the torus this renormalizes the potential by a constant,
/// which only contributes a global phase to the flows built on it.
Field riesz_convolve(const Field& g, double nu);

/// (|x|^{-nu} * |u|^2) u.  The potential is real by construction (the tiny
/// imaginary round-off of the convolution is discarded).
Field hartree_nl(const Field& u, double nu);

/// F(base+a) - F(base+b) for the power nonlinearity F = |.|^alpha (.)
/// (no sign).  Identical second and third arguments give exactly zero.
Field power_difference(const Field& base, const Field& a, const Field& b,
                       double alpha);

/// Same difference for the Hartree nonlinearity, evaluated through the
/// convolution splitting
///   (K*|u1|^2)(u1-u2) + (K*(|u1|^2-|u2|^2)) u2,   u_i = base + w_i,
/// which vanishes exactly for w1 == w2.
Field hartree_difference(const Field& base, const Field& w1, const Field& w2,
                         double nu);

/// sign * coupling * F(u) for the spec's nonlinearity.
Field evaluate_nonlinearity(const Field& u, const EquationSpec& eq);

}  // namespace fnls

#endif
