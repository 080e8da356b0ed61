#ifndef FNLSLAB_SAMPLING_HPP
#define FNLSLAB_SAMPLING_HPP

#include <cstdint>
#include <random>
#include <vector>

#include "fnlslab/grid.hpp"

namespace fnls {

/// SplitMix64 step; also the documented per-sample seed derivation:
/// sample i of a family seeded with s uses mt19937_64(splitmix64(s + 1 + i)).
std::uint64_t splitmix64(std::uint64_t x);

std::mt19937_64 engine_for(std::uint64_t master_seed, std::uint64_t index);

/// Band-limited complex field: Gaussian spectral coefficients under a
/// smooth decay envelope, zero outside |k|_inf <= band_fraction * M/2.
/// Normalized to unit L^2.
Field random_band_limited(const GridPtr& grid, std::uint64_t master_seed,
                          std::uint64_t index, double band_fraction = 0.25);

/// Random radial field: a seeded mix of gaussians and rings with unit L^2.
Field random_radial(const GridPtr& grid, std::uint64_t master_seed,
                    std::uint64_t index);

/// Nonnegative random field (for convolution positivity checks).
Field random_nonnegative(const GridPtr& grid, std::uint64_t master_seed,
                         std::uint64_t index);

struct RadialMixComponent {
    double amplitude;
    double width;
    double radius;  // 0 => gaussian bump, else ring
};

Field radial_mix(const GridPtr& grid,
                 const std::vector<RadialMixComponent>& parts);

}  // namespace fnls

#endif
