#ifndef FNLSLAB_EXPONENTS_HPP
#define FNLSLAB_EXPONENTS_HPP

#include "fnlslab/nonlinearity.hpp"

namespace fnls {

/// Closed-form exponent family of the globalization scheme.  Fields not
/// applicable to the equation kind are NaN.
struct Exponents {
    double index = 0.0;        // the p (power) or s (hartree) supplied
    // power family
    double omega = 0.0;        // 1 - n alpha / (2 beta)
    double kappa = 0.0;        // n alpha / (2 beta (alpha+2))
    double gamma = 0.0;        // (1/2 - 1/p) / (1/p - 1/(alpha+2))
    double p_max = 0.0;
    double case_value = 0.0;   // alpha (1-kappa) - omega: case split for p_max
    double gamma_upper = 0.0;  // admissible gamma range upper end (inf allowed)
    // hartree family
    double theta = 0.0;        // nu / beta
    double gamma_tilde = 0.0;  // (1/2 - 1/s) / (1/s - (2n-nu)/(4n))
    double s_max = 0.0;
    // shared
    double s_critical = 0.0;      // n/2 - beta/alpha, resp. (nu - beta)/2
    double horizon_exponent = 0.0;  // exponent of the splitting parameter in
                                    // the guaranteed horizon
    bool index_in_range = false;    // index in (2, p_max) resp. (2, s_max)
};

/// Evaluates every exponent for the equation at Lebesgue index p (power) or
/// s (hartree).  Parameters outside the theorem scope are accepted; consult
/// EquationSpec::theorem_violations separately.
Exponents compute_exponents(const EquationSpec& eq, double p_or_s);

}  // namespace fnls

#endif
