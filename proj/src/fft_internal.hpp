#ifndef FNLSLAB_FFT_INTERNAL_HPP
#define FNLSLAB_FFT_INTERNAL_HPP

#include <complex>

namespace fnls::detail {

// Unnormalized n-dimensional DFT on an isotropic M^rank array, M a power of
// two.  forward uses e^{-2 pi i jk/M}; backward e^{+2 pi i jk/M}.  in and out
// must be distinct buffers of length M^rank.  Plans are cached per
// (rank, M, direction); execution is single-threaded so results are
// bit-identical regardless of caller thread count.
void dft(int rank, int m, const std::complex<double>* in,
         std::complex<double>* out, bool forward);

}  // namespace fnls::detail

#endif
