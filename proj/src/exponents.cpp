#include "fnlslab/exponents.hpp"

#include <cmath>
#include <limits>

namespace fnls {

Exponents compute_exponents(const EquationSpec& eq, double p_or_s) {
    eq.validate_raw();
    const double nan = std::numeric_limits<double>::quiet_NaN();
    const double inf = std::numeric_limits<double>::infinity();
    Exponents e;
    e.index = p_or_s;
    e.omega = e.kappa = e.gamma = e.p_max = e.case_value = e.gamma_upper = nan;
    e.theta = e.gamma_tilde = e.s_max = nan;
    double n = static_cast<double>(eq.n);
    if (eq.kind == NonlinearityKind::power) {
        double a = eq.alpha;
        double b = eq.beta;
        e.omega = 1.0 - n * a / (2.0 * b);
        e.kappa = n * a / (2.0 * b * (a + 2.0));
        e.s_critical = 0.5 * n - b / a;
        e.case_value = a * (1.0 - e.kappa) - e.omega;
        e.p_max = e.case_value > 0.0
                      ? 2.0 + 2.0 / (a + 1.0) - n * a / (b * (a + 1.0))
                      : a + 2.0;
        e.gamma_upper = e.case_value > 0.0 ? e.omega / e.case_value : inf;
        e.gamma = (0.5 - 1.0 / p_or_s) / (1.0 / p_or_s - 1.0 / (a + 2.0));
        e.horizon_exponent =
            1.0 - e.gamma * (-1.0 + a * (1.0 - e.kappa) / e.omega);
        e.index_in_range = p_or_s > 2.0 && p_or_s < e.p_max;
    } else {
        double v = eq.nu;
        double b = eq.beta;
        e.theta = v / b;
        e.s_critical = 0.5 * (v - b);
        e.s_max = 2.0 * n * (4.0 * b - v) /
                  (n * (4.0 * b - v) - v * (b - v));
        e.gamma_tilde = (0.5 - 1.0 / p_or_s) /
                        (1.0 / p_or_s - (2.0 * n - v) / (4.0 * n));
        e.horizon_exponent =
            1.0 - e.gamma_tilde * (2.0 + e.theta) / (2.0 * (1.0 - e.theta));
        e.index_in_range = p_or_s > 2.0 && p_or_s < e.s_max;
    }
    return e;
}

}  // namespace fnls
