#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "fnlslab/nonlinearity.hpp"
#include "fnlslab/sampling.hpp"

using namespace fnls;

TEST_CASE("power nonlinearity pointwise") {
    auto g = make_grid(2, 4.0, 32);
    Field zero(g);
    CHECK(l2_norm(power_nl(zero, 2.0, 1)) == 0.0);

    Field c(g);
    for (auto& v : c.values) v = cplx(1.5, -0.5);
    Field out = power_nl(c, 2.0, 1);
    cplx expected = std::norm(cplx(1.5, -0.5)) * cplx(1.5, -0.5);
    for (const auto& v : out.values) CHECK(std::abs(v - expected) < 1e-14);

    // real nonnegative, alpha = 1 -> u^2
    Field r(g);
    for (std::size_t i = 0; i < r.size(); ++i)
        r.values[i] = static_cast<double>(i % 7);
    Field sq = power_nl(r, 1.0, 1);
    for (std::size_t i = 0; i < r.size(); ++i)
        CHECK(std::abs(sq.values[i] -
                       r.values[i] * r.values[i]) < 1e-12);

    // |output| = |u|^{alpha+1}
    Field f = random_band_limited(g, 5, 0, 0.5);
    Field p = power_nl(f, 0.7, -1);
    for (std::size_t i = 0; i < f.size(); ++i)
        CHECK(std::abs(std::abs(p.values[i]) -
                       std::pow(std::abs(f.values[i]), 1.7)) <= 1e-12);
}

TEST_CASE("gauge covariance and real quadratic forms") {
    auto g = make_grid(2, 4.0, 64);
    Field u = random_band_limited(g, 9, 0, 0.4);
    cplx phase = std::polar(1.0, 1.234);

    Field pu = power_nl(scaled(u, phase), 1.3, 1);
    Field up = scaled(power_nl(u, 1.3, 1), phase);
    for (std::size_t i = 0; i < u.size(); ++i)
        CHECK(std::abs(pu.values[i] - up.values[i]) <=
              1e-12 * (1.0 + std::abs(up.values[i])));

    Field hu = hartree_nl(scaled(u, phase), 1.0);
    Field uh = scaled(hartree_nl(u, 1.0), phase);
    for (std::size_t i = 0; i < u.size(); ++i)
        CHECK(std::abs(hu.values[i] - uh.values[i]) <=
              1e-12 * (1.0 + std::abs(uh.values[i])));

    cplx ip = inner(power_nl(u, 1.0, 1), u);
    CHECK(std::abs(ip.imag()) <= 1e-10 * std::abs(ip.real()));
    cplx ih = inner(hartree_nl(u, 1.0), u);
    CHECK(std::abs(ih.imag()) <= 1e-10 * std::abs(ih.real()));
    CHECK(ih.real() > 0.0);
}

TEST_CASE("riesz convolution") {
    SUBCASE("Fourier-pair constant") {
        CHECK(riesz_constant(2, 1.0) == doctest::Approx(1.0).epsilon(1e-12));
        // n=1, nu=1/2 is self-dual: c = pi^0 Gamma(1/4)/Gamma(1/4) = 1
        CHECK(riesz_constant(1, 0.5) == doctest::Approx(1.0).epsilon(1e-12));
    }

    auto g = make_grid(2, 8.0, 128);
    SUBCASE("zero input, linearity, real output") {
        Field zero(g);
        CHECK(l2_norm(riesz_convolve(zero, 1.0)) == 0.0);
        Field a = random_nonnegative(g, 17, 0);
        Field b = random_nonnegative(g, 17, 1);
        Field sum = riesz_convolve(a + b, 1.0);
        Field parts = riesz_convolve(a, 1.0) + riesz_convolve(b, 1.0);
        CHECK(l2_norm(sum - parts) <= 1e-11 * l2_norm(sum));
        double imag_max = 0.0, real_max = 0.0;
        Field va = riesz_convolve(a, 1.0);
        for (const auto& v : va.values) {
            imag_max = std::max(imag_max, std::abs(v.imag()));
            real_max = std::max(real_max, std::abs(v.real()));
        }
        CHECK(imag_max <= 1e-11 * real_max);
        CHECK_THROWS(riesz_convolve(a, 2.0));  // nu >= n
    }

    SUBCASE("renormalized-kernel positivity bound") {
        // The xi=0 bin is zeroed, so the potential has zero mean and must dip
        // negative; the sharp bound is V >= (min kernel) * ||g||_{L^1}.
        Field delta(g);
        std::vector<int> idx(2);
        // renormalized kernel = multiplier transform of the unit DC spike
        Field kernel(g);
        {
            Field spike(g);
            std::size_t center = 0;
            for (std::size_t i = 0; i < g->size(); ++i) {
                g->unflatten(i, idx.data());
                if (idx[0] == g->points() / 2 && idx[1] == g->points() / 2)
                    center = i;
            }
            spike.values[center] = 1.0 / std::pow(g->dx(), 2);  // unit mass
            kernel = riesz_convolve(spike, 1.0);
        }
        double kmin = 0.0;
        for (const auto& v : kernel.values)
            kmin = std::min(kmin, v.real());
        CHECK(kmin < 0.0);
        for (int s = 0; s < 20; ++s) {
            Field gfield = random_nonnegative(g, 23, s);
            double l1 = 0.0;
            for (const auto& v : gfield.values) l1 += std::abs(v);
            l1 *= std::pow(g->dx(), 2);
            Field v = riesz_convolve(gfield, 1.0);
            double vmin = 0.0, vmax = 0.0;
            for (const auto& x : v.values) {
                vmin = std::min(vmin, x.real());
                vmax = std::max(vmax, x.real());
            }
            CHECK(vmax > 0.0);
            CHECK(vmin >= kmin * l1 - 1e-10 * vmax);
        }
    }

    SUBCASE("quadratic form positivity survives renormalization") {
        for (int s = 0; s < 10; ++s) {
            Field u = random_band_limited(g, 29, s, 0.3);
            cplx q = inner(hartree_nl(u, 1.0), u);
            CHECK(q.real() > 0.0);
            CHECK(std::abs(q.imag()) <= 1e-10 * q.real());
        }
    }
}

TEST_CASE("HLS ratio bounded and stable under refinement") {
    // Grid-independent nonnegative family: seeded sums of positive radial
    // bumps, so refinement changes the sampling and nothing else.
    auto family_probe = [](const GridPtr& g, double nu, double p, double q,
                           int samples, std::uint64_t seed) {
        double worst = 0.0;
        for (int s = 0; s < samples; ++s) {
            auto eng = engine_for(seed, s);
            std::uniform_real_distribution<double> uni(0.0, 1.0);
            std::vector<RadialMixComponent> parts;
            double L = g->half_extent();
            int nparts = 2 + static_cast<int>(uni(eng) * 2.0);
            for (int j = 0; j < nparts; ++j) {
                RadialMixComponent c;
                c.amplitude = 0.2 + 0.8 * uni(eng);
                c.width = (0.15 + 0.15 * uni(eng)) * L;
                c.radius = (uni(eng) < 0.5) ? 0.0 : (0.15 + 0.15 * uni(eng)) * L;
                parts.push_back(c);
            }
            Field gf = radial_mix(g, parts);
            double num = lp_norm(riesz_convolve(gf, nu), q);
            double den = lp_norm(gf, p);
            if (den > 0.0) worst = std::max(worst, num / den);
        }
        return worst;
    };
    // (n, nu) = (2, 1): 1/q = 1/p + nu/n - 1 with p = 4/3 -> q = 4
    auto g1 = make_grid(2, 8.0, 64);
    auto g2 = make_grid(2, 8.0, 128);
    double c1 = family_probe(g1, 1.0, 4.0 / 3.0, 4.0, 60, 31);
    double c2 = family_probe(g2, 1.0, 4.0 / 3.0, 4.0, 60, 31);
    CHECK(c1 > 0.0);
    CHECK(std::abs(c2 - c1) <= 0.10 * c1);

    // (n, nu) = (3, 1.2): p = 1.25 -> 1/q = 0.8 - 0.4 = 0.4
    auto g3a = make_grid(3, 4.0, 16);
    auto g3b = make_grid(3, 4.0, 32);
    double c3a = family_probe(g3a, 1.2, 1.25, 2.5, 20, 37);
    double c3b = family_probe(g3b, 1.2, 1.25, 2.5, 20, 37);
    CHECK(c3a > 0.0);
    CHECK(std::abs(c3b - c3a) <= 0.10 * c3a);
}

TEST_CASE("hartree nonlinearity") {
    auto g = make_grid(2, 8.0, 128);
    Field zero(g);
    CHECK(l2_norm(hartree_nl(zero, 1.0)) == 0.0);

    // radial in, radial out
    Field u = radial_profile(g, RadialKind::gaussian, {1.0, 1.0, 0.0});
    Field h = hartree_nl(u, 1.0);
    // compare against the axis-swapped copy
    Field swapped(g);
    std::vector<int> idx(2), src(2);
    for (std::size_t i = 0; i < g->size(); ++i) {
        g->unflatten(i, idx.data());
        src[0] = idx[1];
        src[1] = idx[0];
        swapped.values[i] = h.values[g->flatten(src.data())];
    }
    CHECK(l2_norm(swapped - h) <= 1e-11 * l2_norm(h));

    cplx q = inner(h, u);
    CHECK(q.real() > 0.0);
    CHECK(std::abs(q.imag()) <= 1e-10 * q.real());
}

TEST_CASE("power difference form") {
    auto g = make_grid(2, 4.0, 32);
    Field u = random_band_limited(g, 41, 0, 0.5);
    Field v = random_band_limited(g, 41, 1, 0.5);
    Field w = random_band_limited(g, 41, 2, 0.5);

    SUBCASE("identical arguments vanish exactly") {
        Field d = power_difference(u, v, v, 1.3);
        for (const auto& x : d.values) CHECK(x == cplx(0.0, 0.0));
    }
    SUBCASE("reduction to the power nonlinearity") {
        Field zero(g);
        Field d = power_difference(zero, v, zero, 2.0);
        Field ref = power_nl(v, 2.0, 1);
        CHECK(l2_norm(d - ref) <= 1e-13 * l2_norm(ref));
    }
    SUBCASE("Monte-Carlo difference bound") {
        // |F(u+v) - F(u+w)| <= C (|u|^a + |v|^a + |w|^a) |v - w| over scalar
        // triples; the constant is finite and frozen per alpha.
        std::mt19937_64 eng(12345);
        std::normal_distribution<double> gauss(0.0, 1.0);
        std::uniform_real_distribution<double> mag(0.0, 3.0);
        auto sample = [&]() {
            return std::polar(mag(eng), gauss(eng) * std::numbers::pi);
        };
        struct Case { double alpha, frozen; };
        // frozen ceilings measured on the first run (seed 12345, 1e5 triples)
        for (Case c : {Case{0.5, 2.0}, Case{1.0, 2.5}, Case{2.0, 7.0}}) {
            double worst = 0.0;
            for (int s = 0; s < 100000; ++s) {
                cplx a = sample(), b = sample(), d = sample();
                if (std::abs(b - d) < 1e-12) continue;
                cplx ga = (a + b) * std::pow(std::abs(a + b), c.alpha) -
                          (a + d) * std::pow(std::abs(a + d), c.alpha);
                double bound = (std::pow(std::abs(a), c.alpha) +
                                std::pow(std::abs(b), c.alpha) +
                                std::pow(std::abs(d), c.alpha)) *
                               std::abs(b - d);
                if (bound > 0.0) worst = std::max(worst, std::abs(ga) / bound);
            }
            CHECK(worst > 0.0);
            CHECK(worst <= c.frozen);
        }
    }
}

TEST_CASE("hartree difference via the convolution splitting") {
    auto g = make_grid(2, 8.0, 64);
    Field v = random_band_limited(g, 51, 0, 0.4);
    Field w1 = random_band_limited(g, 51, 1, 0.4);
    Field w2 = random_band_limited(g, 51, 2, 0.4);

    SUBCASE("identical arguments vanish exactly") {
        Field d = hartree_difference(v, w1, w1, 1.0);
        for (const auto& x : d.values) CHECK(x == cplx(0.0, 0.0));
    }
    SUBCASE("reduction to hartree_nl") {
        Field zero(g);
        Field d = hartree_difference(zero, w1, zero, 1.0);
        Field ref = hartree_nl(w1, 1.0);
        CHECK(l2_norm(d - ref) <= 1e-12 * l2_norm(ref));
    }
    SUBCASE("splitting agrees with the direct difference") {
        Field split = hartree_difference(v, w1, w2, 1.0);
        Field direct = hartree_nl(v + w1, 1.0) - hartree_nl(v + w2, 1.0);
        CHECK(l2_norm(split - direct) <= 1e-10 * l2_norm(direct));
    }
}

TEST_CASE("equation spec validation names the violated condition") {
    EquationSpec eq;
    eq.kind = NonlinearityKind::power;
    eq.n = 2;
    eq.beta = 1.5;
    eq.alpha = 2.0;  // >= 2 beta / n = 1.5
    auto v = eq.theorem_violations();
    REQUIRE(v.size() == 1);
    CHECK(v[0].find("mass-subcritical") != std::string::npos);

    eq.alpha = 1.0;
    CHECK(eq.theorem_violations().empty());

    eq.beta = 2.5;
    CHECK(!eq.theorem_violations().empty());

    EquationSpec h;
    h.kind = NonlinearityKind::hartree;
    h.n = 2;
    h.beta = 1.5;
    h.nu = 1.7;  // >= min{beta, n} = 1.5
    CHECK(!h.theorem_violations().empty());
    h.nu = 1.0;
    CHECK(h.theorem_violations().empty());
}
