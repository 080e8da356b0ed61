#include "fnlslab/sampling.hpp"

#include <cmath>
#include <numbers>

namespace fnls {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

std::mt19937_64 engine_for(std::uint64_t master_seed, std::uint64_t index) {
    return std::mt19937_64(splitmix64(master_seed + 1 + index));
}

namespace {

Field normalized(Field f) {
    double s = l2_norm(f);
    if (s > 0.0)
        for (cplx& v : f.values) v /= s;
    return f;
}

}  // namespace

Field random_band_limited(const GridPtr& grid, std::uint64_t master_seed,
                          std::uint64_t index, double band_fraction) {
    const Grid& g = *grid;
    auto eng = engine_for(master_seed, index);
    std::normal_distribution<double> gauss(0.0, 1.0);
    int band = std::max(1, static_cast<int>(band_fraction * g.points() / 2));
    double w2 = 0.5 * band * band;
    Field spec(grid);
    std::vector<int> idx(g.dim());
    for (std::size_t i = 0; i < g.size(); ++i) {
        g.unflatten(i, idx.data());
        int kmax = 0;
        double k2 = 0.0;
        for (int a = 0; a < g.dim(); ++a) {
            int k = g.wavenumber(idx[a]);
            kmax = std::max(kmax, std::abs(k));
            k2 += static_cast<double>(k) * k;
        }
        // Draw in index order regardless of the band so the stream is
        // independent of band_fraction truncation decisions downstream.
        double re = gauss(eng);
        double im = gauss(eng);
        if (kmax <= band)
            spec.values[i] = cplx(re, im) * std::exp(-k2 / (2.0 * w2));
    }
    return normalized(inverse_transform(spec));
}

Field radial_mix(const GridPtr& grid,
                 const std::vector<RadialMixComponent>& parts) {
    const Grid& g = *grid;
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
        for (const auto& c : parts) {
            if (c.radius == 0.0) {
                v += c.amplitude *
                     std::exp(-std::numbers::pi * r2 / (c.width * c.width));
            } else {
                double d = r - c.radius;
                v += c.amplitude * std::exp(-d * d / (2.0 * c.width * c.width));
            }
        }
        out.values[i] = v;
    }
    return out;
}

Field random_radial(const GridPtr& grid, std::uint64_t master_seed,
                    std::uint64_t index) {
    const Grid& g = *grid;
    auto eng = engine_for(master_seed, index);
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    double L = g.half_extent();
    std::vector<RadialMixComponent> parts;
    int nparts = 2 + static_cast<int>(uni(eng) * 2.0);
    for (int j = 0; j < nparts; ++j) {
        RadialMixComponent c;
        c.amplitude = 0.2 + 0.8 * uni(eng);
        // Parameters depend on the extent only, never on dx, so the same
        // seed describes the same function on refined grids.
        c.width = (0.08 + 0.20 * uni(eng)) * L;
        c.radius = (uni(eng) < 0.5) ? 0.0 : (0.1 + 0.2 * uni(eng)) * L;
        parts.push_back(c);
    }
    return normalized(radial_mix(grid, parts));
}

Field random_nonnegative(const GridPtr& grid, std::uint64_t master_seed,
                         std::uint64_t index) {
    Field f = random_band_limited(grid, master_seed, index, 0.2);
    Field out(grid);
    for (std::size_t i = 0; i < f.values.size(); ++i)
        out.values[i] = std::norm(f.values[i]);
    return normalized(std::move(out));
}

}  // namespace fnls
