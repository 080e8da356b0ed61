#include "fnlslab/nonlinearity.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace fnls {

void EquationSpec::validate_raw() const {
    if (n < 1 || n > 3) throw std::invalid_argument("dimension must be 1..3");
    if (!(beta > 0.5)) throw std::invalid_argument("beta must exceed 1/2");
    if (sign != 1 && sign != -1)
        throw std::invalid_argument("sign must be +1 or -1");
    if (coupling < 0.0)
        throw std::invalid_argument("coupling must be nonnegative");
    if (kind == NonlinearityKind::power) {
        if (!(alpha > 0.0)) throw std::invalid_argument("alpha must be positive");
    } else {
        if (!(nu > 0.0) || !(nu < n))
            throw std::invalid_argument("nu must lie in (0, n)");
    }
}

std::vector<std::string> EquationSpec::theorem_violations() const {
    std::vector<std::string> out;
    std::ostringstream os;
    if (n < 2) out.push_back("n >= 2 required for the radial dispersive estimates");
    double beta_lo = 2.0 * n / (2.0 * n - 1.0);
    if (!(beta > beta_lo && beta < 2.0)) {
        os.str("");
        os << "beta = " << beta << " outside the dispersion range (2n/(2n-1), 2) = ("
           << beta_lo << ", 2)";
        out.push_back(os.str());
    }
    if (kind == NonlinearityKind::power) {
        if (!(alpha > 0.0 && alpha < 2.0 * beta / n)) {
            os.str("");
            os << "alpha = " << alpha
               << " outside the mass-subcritical range (0, 2 beta/n) = (0, "
               << 2.0 * beta / n << ")";
            out.push_back(os.str());
        }
    } else {
        double cap = std::min(beta, static_cast<double>(n));
        if (!(nu > 0.0 && nu < cap)) {
            os.str("");
            os << "nu = " << nu << " outside (0, min{beta, n}) = (0, " << cap
               << ")";
            out.push_back(os.str());
        }
    }
    return out;
}

double EquationSpec::target_lebesgue() const {
    if (kind == NonlinearityKind::power) return alpha + 2.0;
    return 4.0 * n / (2.0 * n - nu);
}

Field power_nl(const Field& u, double alpha, int sign) {
    if (!(alpha > 0.0)) throw std::invalid_argument("alpha must be positive");
    Field out(u.grid, u.time_tag);
    double s = static_cast<double>(sign);
    for (std::size_t i = 0; i < u.values.size(); ++i) {
        double a = std::abs(u.values[i]);
        out.values[i] = s * std::pow(a, alpha) * u.values[i];
    }
    return out;
}

double riesz_constant(int n, double nu) {
    return std::pow(std::numbers::pi, nu - 0.5 * n) *
           std::tgamma(0.5 * (n - nu)) / std::tgamma(0.5 * nu);
}

Field riesz_convolve(const Field& g, double nu) {
    const Grid& gr = *g.grid;
    if (!(nu > 0.0) || !(nu < gr.dim()))
        throw std::invalid_argument("riesz_convolve requires 0 < nu < n");
    double c = riesz_constant(gr.dim(), nu);
    double expo = nu - gr.dim();
    std::vector<double> m(gr.size());
    std::vector<int> idx(gr.dim());
    for (std::size_t i = 0; i < gr.size(); ++i) {
        gr.unflatten(i, idx.data());
        double x2 = 0.0;
        for (int a = 0; a < gr.dim(); ++a) {
            double xi = gr.frequency(idx[a]);
            x2 += xi * xi;
        }
        m[i] = x2 == 0.0 ? 0.0 : c * std::pow(std::sqrt(x2), expo);
    }
    return apply_spectral_multiplier(g, std::span<const double>(m));
}

Field hartree_nl(const Field& u, double nu) {
    Field density(u.grid, u.time_tag);
    for (std::size_t i = 0; i < u.values.size(); ++i)
        density.values[i] = std::norm(u.values[i]);
    Field potential = riesz_convolve(density, nu);
    Field out(u.grid, u.time_tag);
    for (std::size_t i = 0; i < u.values.size(); ++i)
        out.values[i] = potential.values[i].real() * u.values[i];
    return out;
}

Field power_difference(const Field& base, const Field& a, const Field& b,
                       double alpha) {
    if (!(alpha > 0.0)) throw std::invalid_argument("alpha must be positive");
    Field out(base.grid, base.time_tag);
    for (std::size_t i = 0; i < base.values.size(); ++i) {
        cplx ua = base.values[i] + a.values[i];
        cplx ub = base.values[i] + b.values[i];
        cplx fa = std::pow(std::abs(ua), alpha) * ua;
        cplx fb = std::pow(std::abs(ub), alpha) * ub;
        out.values[i] = fa - fb;
    }
    return out;
}

Field hartree_difference(const Field& base, const Field& w1, const Field& w2,
                         double nu) {
    const Grid& g = *base.grid;
    Field d1(base.grid), d2(base.grid), diff(base.grid);
    std::vector<cplx> u1(g.size()), u2(g.size());
    for (std::size_t i = 0; i < g.size(); ++i) {
        u1[i] = base.values[i] + w1.values[i];
        u2[i] = base.values[i] + w2.values[i];
        d1.values[i] = std::norm(u1[i]);
        diff.values[i] = std::norm(u1[i]) - std::norm(u2[i]);
    }
    Field v1 = riesz_convolve(d1, nu);
    Field vd = riesz_convolve(diff, nu);
    Field out(base.grid, base.time_tag);
    for (std::size_t i = 0; i < g.size(); ++i)
        out.values[i] = v1.values[i].real() * (u1[i] - u2[i]) +
                        vd.values[i].real() * u2[i];
    return out;
}

Field evaluate_nonlinearity(const Field& u, const EquationSpec& eq) {
    if (eq.coupling == 0.0) return Field(u.grid, u.time_tag);
    Field f = eq.kind == NonlinearityKind::power
                  ? power_nl(u, eq.alpha, eq.sign)
                  : scaled(hartree_nl(u, eq.nu), cplx(eq.sign, 0.0));
    if (eq.coupling != 1.0) f = scaled(f, cplx(eq.coupling, 0.0));
    return f;
}

}  // namespace fnls
