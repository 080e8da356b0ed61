#include "fft_internal.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <tuple>
#include <vector>

namespace fnls::detail {

namespace {

struct PlanCache {
    std::mutex mu;
    std::map<std::tuple<int, int, bool>, fftw_plan> plans;

    fftw_plan get(int rank, int m, bool forward) {
        std::scoped_lock lock(mu);
        auto key = std::make_tuple(rank, m, forward);
        auto it = plans.find(key);
        if (it != plans.end()) return it->second;
        std::size_t total = 1;
        for (int a = 0; a < rank; ++a) total *= static_cast<std::size_t>(m);
        // Scratch buffers are only used at planning time; execution happens
        // through fftw_execute_dft on caller arrays (FNLS plans are
        // FFTW_UNALIGNED so any allocation works).
        fftw_complex* a = fftw_alloc_complex(total);
        fftw_complex* b = fftw_alloc_complex(total);
        std::vector<int> dims(rank, m);
        fftw_plan p = fftw_plan_dft(rank, dims.data(), a, b,
                                    forward ? FFTW_FORWARD : FFTW_BACKWARD,
                                    FFTW_ESTIMATE | FFTW_UNALIGNED);
        fftw_free(a);
        fftw_free(b);
        plans.emplace(key, p);
        return p;
    }
};

PlanCache& cache() {
    static PlanCache c;
    return c;
}

}  // namespace

void dft(int rank, int m, const std::complex<double>* in,
         std::complex<double>* out, bool forward) {
    fftw_plan p = cache().get(rank, m, forward);
    // std::complex<double> is layout-compatible with fftw_complex.
    fftw_execute_dft(p,
                     reinterpret_cast<fftw_complex*>(
                         const_cast<std::complex<double>*>(in)),
                     reinterpret_cast<fftw_complex*>(out));
}

}  // namespace fnls::detail
