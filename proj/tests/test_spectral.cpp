#include <doctest.h>

#include <cmath>
#include <numbers>

#include "test_helpers.hpp"
#include "vorwave/spectral.hpp"

using namespace vorwave;
using namespace vorwave::test;

namespace {
// closed forms, independent of the coth_nd code path
const double kCoth1 = (std::exp(2.0) + 1.0) / (std::exp(2.0) - 1.0);  // 1.3130352854993312
const double kCoth2 = (std::exp(4.0) + 1.0) / (std::exp(4.0) - 1.0);  // 1.0373147207275482
const double kCoth3 = (std::exp(6.0) + 1.0) / (std::exp(6.0) - 1.0);
}  // namespace

TEST_CASE("series round trip is exact for resolved degrees") {
    const PeriodicSeries f = random_series(31, 1.0, 42);
    const auto grid = f.sample(128);  // > 2*31+1 nodes
    const PeriodicSeries back = PeriodicSeries::fit(grid, 31);
    CHECK((f - back).coeff_inf_norm() < 1e-12 * std::max(1.0, f.coeff_inf_norm()));
}

TEST_CASE("conjugation multiplier: frozen values") {
    CHECK(kCoth1 == doctest::Approx(1.3130352854993312).epsilon(1e-15));

    const PeriodicSeries c = conjugation(PeriodicSeries::harmonic_cos(1, 1.0), StripDepth(1.0));
    CHECK(c.sin_coeff(1) == doctest::Approx(kCoth1).epsilon(1e-14));
    CHECK(std::abs(c.cos_coeff(1)) < 1e-15);
    CHECK(std::abs(c.mean()) < 1e-15);

    const PeriodicSeries z = conjugation(PeriodicSeries(8), StripDepth(0.7));
    CHECK(z.coeff_inf_norm() == 0.0);

    const PeriodicSeries s2 = conjugation(PeriodicSeries::harmonic_sin(2, 1.0), StripDepth(0.5));
    CHECK(s2.cos_coeff(2) == doctest::Approx(-kCoth1).epsilon(1e-14));
}

TEST_CASE("conjugation rejects nonzero mean") {
    PeriodicSeries f = PeriodicSeries::harmonic_cos(1, 1.0);
    f.set_mean(0.5);
    CHECK_THROWS_AS(conjugation(f, StripDepth(1.0)), std::invalid_argument);
}

TEST_CASE("multiplier exactness for all modes and parities") {
    for (const double d : {0.3, 1.0, 2.5}) {
        for (int n = 1; n <= 64; ++n) {
            const double nd = n * d;
            const double ref = nd < 300.0 ? std::cosh(nd) / std::sinh(nd) : 1.0;
            const PeriodicSeries sc =
                conjugation(PeriodicSeries::harmonic_cos(n, 1.0), StripDepth(d));
            const PeriodicSeries ss =
                conjugation(PeriodicSeries::harmonic_sin(n, 1.0), StripDepth(d));
            CHECK(std::abs(sc.sin_coeff(n) - ref) <= 1e-12 * ref);
            CHECK(std::abs(ss.cos_coeff(n) + ref) <= 1e-12 * ref);
        }
    }
}

TEST_CASE("Dirichlet-Neumann operator") {
    const PeriodicSeries c = dirichlet_neumann(PeriodicSeries::constant(3.0), StripDepth(1.5));
    CHECK(c.mean() == doctest::Approx(2.0).epsilon(1e-15));
    CHECK(c.coeff_inf_norm() == doctest::Approx(2.0));

    const PeriodicSeries g3 = dirichlet_neumann(PeriodicSeries::harmonic_cos(3, 1.0), StripDepth(1.0));
    CHECK(g3.cos_coeff(3) == doctest::Approx(3.0 * kCoth3).epsilon(1e-14));
    CHECK(std::abs(g3.mean()) < 1e-15);

    PeriodicSeries f = PeriodicSeries::harmonic_cos(1, 1.0);
    f.set_mean(2.0);
    const PeriodicSeries g = dirichlet_neumann(f, StripDepth(2.0));
    CHECK(g.mean() == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(g.cos_coeff(1) == doctest::Approx(kCoth2).epsilon(1e-14));
}

TEST_CASE("derivative is termwise") {
    const PeriodicSeries d1 = derivative(PeriodicSeries::harmonic_cos(4, 1.0));
    CHECK(d1.sin_coeff(4) == doctest::Approx(-4.0));
    CHECK(derivative(PeriodicSeries::constant(7.0)).coeff_inf_norm() == 0.0);
    const PeriodicSeries d2 = derivative(PeriodicSeries::harmonic_sin(2, 3.0));
    CHECK(d2.cos_coeff(2) == doctest::Approx(6.0));
    CHECK(std::abs(derivative(random_series(16, 1.0, 3)).mean()) < 1e-15);
}

TEST_CASE("product: trig identities and exactness") {
    const PeriodicSeries c1 = PeriodicSeries::harmonic_cos(1, 1.0);
    const PeriodicSeries p = product(c1, c1);
    CHECK(p.mean() == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(p.cos_coeff(2) == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(std::abs(p.cos_coeff(1)) < 1e-14);

    const PeriodicSeries f = random_series(20, 1.0, 7);
    const PeriodicSeries idp = product(f, PeriodicSeries::constant(1.0));
    CHECK((idp - f).coeff_inf_norm() < 1e-13);

    const PeriodicSeries cs = product(c1, PeriodicSeries::harmonic_sin(1, 1.0));
    CHECK(cs.sin_coeff(2) == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(std::abs(cs.mean()) < 1e-15);

    // pointwise agreement on random draws
    const PeriodicSeries g = random_series(13, 0.8, 8);
    const PeriodicSeries fg = product(f, g);
    for (const double x : {0.1, 1.7, -2.9}) CHECK(fg(x) == doctest::Approx(f(x) * g(x)).epsilon(1e-12));
}

TEST_CASE("commutator: frozen multiplier-algebra values") {
    const PeriodicSeries c1 = PeriodicSeries::harmonic_cos(1, 1.0);
    const PeriodicSeries com = commutator(c1, c1, StripDepth(1.0));
    const double want = 0.5 * (kCoth1 - kCoth2);
    CHECK(want == doctest::Approx(0.1378602823858915).epsilon(1e-14));
    CHECK(com.sin_coeff(2) == doctest::Approx(want).epsilon(1e-13));
    CHECK(std::abs(com.mean()) < 1e-14);
    CHECK(std::abs(com.cos_coeff(1)) < 1e-14);

    const PeriodicSeries zero = commutator(PeriodicSeries::constant(1.0), random_series(12, 1.0, 5),
                                            StripDepth(0.8));
    CHECK(zero.coeff_inf_norm() < 1e-13);

    // hand-expanded oracle for f = cos 2x, g = sin x, d = 1:
    //   f C(g) - C(fg) = ((coth3 - coth1)/2) cos 3x - coth1 cos x
    const PeriodicSeries com2 =
        commutator(PeriodicSeries::harmonic_cos(2, 1.0), PeriodicSeries::harmonic_sin(1, 1.0),
                   StripDepth(1.0));
    CHECK(com2.cos_coeff(3) == doctest::Approx(0.5 * (kCoth3 - kCoth1)).epsilon(1e-13));
    CHECK(com2.cos_coeff(1) == doctest::Approx(-kCoth1).epsilon(1e-13));
    CHECK(std::abs(com2.sin_coeff(1)) < 1e-14);
    CHECK(std::abs(com2.sin_coeff(3)) < 1e-14);
}

TEST_CASE("commutator agrees with direct composition") {
    const PeriodicSeries f = random_series(16, 1.0, 11);
    const PeriodicSeries g = random_series(16, 1.0, 12);
    const StripDepth d(0.9);
    const PeriodicSeries lhs = commutator(f, g, d);
    const PeriodicSeries fg = product(f, g);
    const PeriodicSeries rhs = product(f, conjugation(g, d)) - conjugation(fg.mean_free(), d);
    CHECK((lhs - rhs).coeff_inf_norm() < 1e-12);
}

TEST_CASE("kernel path agrees with multiplier path") {
    const StripDepth d1(1.0);
    const PeriodicSeries a = conjugation_via_kernel(PeriodicSeries::harmonic_cos(1, 1.0), d1, 64);
    CHECK(a.sin_coeff(1) == doctest::Approx(kCoth1).epsilon(1e-8));

    const PeriodicSeries z = conjugation_via_kernel(PeriodicSeries(4), d1, 64);
    CHECK(z.coeff_inf_norm() < 1e-14);

    const PeriodicSeries b =
        conjugation_via_kernel(PeriodicSeries::harmonic_sin(1, 1.0), StripDepth(2.0), 64);
    CHECK(b.cos_coeff(1) == doctest::Approx(-kCoth2).epsilon(1e-8));

    for (std::uint64_t seed : {21ULL, 22ULL, 23ULL}) {
        const PeriodicSeries w = random_series(16, 1.0, seed);
        const PeriodicSeries viak = conjugation_via_kernel(w, StripDepth(0.75), 64);
        const PeriodicSeries mult = conjugation(w, StripDepth(0.75));
        CHECK((viak - mult).coeff_inf_norm() < 1e-8);
    }

    CHECK_THROWS_AS(conjugation_via_kernel(random_series(16, 1.0, 1), d1, 8),
                    std::invalid_argument);
}

TEST_CASE("depth derivative of conjugation") {
    const PeriodicSeries d1 = dh_conjugation_derivative(PeriodicSeries::harmonic_cos(1, 1.0), 1.0, 1.0);
    // closed form 1 - coth(1)^2 = -0.7240616609663102 (the commonly quoted
    // -0.72406166096602 is short by a few ulps of precision)
    CHECK(1.0 - kCoth1 * kCoth1 == doctest::Approx(-0.7240616609663102).epsilon(1e-14));
    CHECK(d1.cos_coeff(1) == doctest::Approx(1.0 - kCoth1 * kCoth1).epsilon(1e-13));

    CHECK(dh_conjugation_derivative(PeriodicSeries::constant(4.0), 1.0, 1.0).coeff_inf_norm() == 0.0);

    // finite-difference oracle in h
    const PeriodicSeries f = random_series(12, 1.0, 31);
    const double k = 1.3, h = 0.8, eps = 1e-5;
    const PeriodicSeries an = dh_conjugation_derivative(f, k, h);
    const PeriodicSeries fd =
        (1.0 / (2.0 * eps)) *
        (conjugation(derivative(f), StripDepth(k * (h + eps))) -
         conjugation(derivative(f), StripDepth(k * (h - eps))));
    CHECK((an - fd).coeff_inf_norm() < 1e-8 * std::max(1.0, an.coeff_inf_norm()));
}

TEST_CASE("skew-adjointness and self-adjointness") {
    const StripDepth d(1.1);
    for (std::uint64_t seed = 100; seed < 110; ++seed) {
        const PeriodicSeries f = random_series(24, 1.0, seed);
        const PeriodicSeries g = random_series(24, 1.0, seed + 1000);
        CHECK(std::abs(inner_product(f, conjugation(g, d)) + inner_product(conjugation(f, d), g)) <
              1e-10);
        CHECK(std::abs(inner_product(f, conjugation(derivative(g), d)) -
                       inner_product(g, conjugation(derivative(f), d))) < 1e-10);
    }
}

TEST_CASE("averaging identity [v^2 C(v')] = 2 [v C(v v')]") {
    const StripDepth d(0.8);
    for (std::uint64_t seed = 200; seed < 206; ++seed) {
        PeriodicSeries v = random_series(20, 0.7, seed);
        v.set_mean(1.0 + 0.1 * static_cast<double>(seed - 200));
        const PeriodicSeries vp = derivative(v);
        const double lhs = product_average(product(v, v), conjugation(vp, d));
        const double rhs = 2.0 * product_average(v, conjugation(product(v, vp).mean_free(), d));
        CHECK(std::abs(lhs - rhs) < 1e-10);
    }
}

TEST_CASE("boundary-pair algebra closes under products") {
    const StripDepth d(1.4);
    for (std::uint64_t seed = 300; seed < 306; ++seed) {
        const PeriodicSeries w1 = random_series(16, 1.0, seed);
        const PeriodicSeries w2 = random_series(16, 1.0, seed + 50);
        PeriodicSeries z1 = conjugation(w1, d);
        z1.set_mean(0.37);
        PeriodicSeries z2 = conjugation(w2, d);
        z2.set_mean(-1.21);
        const PeriodicSeries z = product(z1, z2) - product(w1, w2);
        const PeriodicSeries w = product(z1, w2) + product(w1, z2);
        CHECK(std::abs(w.mean()) < 1e-10);
        const PeriodicSeries rebuilt =
            PeriodicSeries::constant(z.mean()) + conjugation(w.mean_free(), d);
        CHECK((z - rebuilt).coeff_inf_norm() < 1e-10);
    }
}

TEST_CASE("commutator smoothing: one extra order of coefficient decay") {
    const int n_modes = 64;
    const StripDepth d(1.0);
    const PeriodicSeries f = random_series(n_modes, 1.0, 401, false, 2.0);
    const PeriodicSeries g = random_series(n_modes, 1.0, 402, false, 2.0);
    const PeriodicSeries com = commutator(f, g, d);
    const PeriodicSeries ref = conjugation(product(f, g).mean_free(), d);

    std::vector<double> logn, logc, logr;
    for (int n = n_modes / 4; n <= n_modes / 2; ++n) {
        const double cc = std::hypot(com.cos_coeff(n), com.sin_coeff(n));
        const double rr = std::hypot(ref.cos_coeff(n), ref.sin_coeff(n));
        if (cc <= 0.0 || rr <= 0.0) continue;
        logn.push_back(std::log(n));
        logc.push_back(std::log(cc));
        logr.push_back(std::log(rr));
    }
    REQUIRE(logn.size() > 10);
    const double slope_com = ls_slope(logn, logc);
    const double slope_ref = ls_slope(logn, logr);
    CHECK(slope_com <= slope_ref - 0.9);
}
