#ifndef FNLSLAB_PROPAGATOR_HPP
#define FNLSLAB_PROPAGATOR_HPP

#include "fnlslab/grid.hpp"
#include "fnlslab/modulation.hpp"

namespace fnls {

/// Dispersion order beta.  This artifact accepts (1/2, 4]; the globalization
/// experiments restrict further at configuration time.
struct Dispersion {
    double beta;
    explicit Dispersion(double b) : beta(b) {
        if (!(b > 0.5) || !(b <= 4.0))
            throw std::invalid_argument("dispersion order must lie in (1/2, 4]");
    }
};

/// Multiplier samples of exp(-i (2 pi |xi|)^beta t) in storage order.
std::vector<cplx> propagator_multiplier(const Grid& g, double beta, double t);

/// e^{-it(-Delta)^{beta/2}} f: exact Fourier multiplier, unitary on the
/// discrete L^2.  Advances time_tag by t.
Field apply_propagator(const Field& f, Dispersion beta, double t);

/// ||U(t1)U(t2)f - U(t1+t2)f||_2 / ||f||_2 (0 for zero input).
double group_property_check(const Field& f, Dispersion beta, double t1,
                            double t2);

/// ||U(t)f||_{M^{p,q}} / ((1+|t|)^{n|1/p-1/2|} ||f||_{M^{p,q}}).
/// Throws on zero-norm input.
double measure_modulation_bound(const Field& f, Dispersion beta, double t,
                                const ModulationPartition& part,
                                const ModNormSpec& spec, int threads = 1);

/// Frozen ceiling for measure_modulation_bound ratios with the partition
/// used by this artifact (calibrated once over the verification family).
double modulation_bound_ceiling();

/// Optional multiplier cache keyed by (grid, beta, t).  Off by default;
/// enabling it never changes results.
void set_propagator_cache_enabled(bool enabled);
void clear_propagator_cache();

}  // namespace fnls

#endif
