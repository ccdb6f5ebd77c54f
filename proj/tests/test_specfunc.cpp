#include "doctest.h"

#include <cmath>
#include <complex>
#include <random>

#include "bfn/specfunc.hpp"
#include "bfn/types.hpp"
#include "oracles.hpp"

using namespace bfn;

TEST_CASE("bessel polynomial coefficients") {
    const auto& t0 = theta_coefficients(0);
    REQUIRE(t0.size() == 1);
    CHECK(t0[0] == 1.0);
    const auto& t1 = theta_coefficients(1);
    REQUIRE(t1.size() == 2);
    CHECK(t1[0] == 1.0);
    CHECK(t1[1] == 1.0);
    const auto& t2 = theta_coefficients(2);  // 3 + 3z + z^2
    REQUIRE(t2.size() == 3);
    CHECK(t2[0] == 3.0);
    CHECK(t2[1] == 3.0);
    CHECK(t2[2] == 1.0);
    CHECK(theta_polynomial(2, 2.0) == doctest::Approx(13.0));
    CHECK_THROWS_AS((void)theta_coefficients(-1), std::domain_error);
}

TEST_CASE("reduced bessel function against the cylinder Bessel K") {
    // khat_nu(z) = sqrt(2/pi) z^nu K_nu(z), checked across orders and signs
    for (double z : {0.1, 0.5, 1.0, 2.0, 5.0, 10.0}) {
        for (int n = -4; n <= 6; ++n) {
            double nu = n - 0.5;
            double ref = std::sqrt(2.0 / pi) * std::pow(z, nu) *
                         std::cyl_bessel_k(std::abs(nu), z);
            CHECK(reduced_bessel(nu, z) ==
                  doctest::Approx(ref).epsilon(1e-13));
        }
    }
    // closed forms: khat_{1/2} = e^{-z}, khat_{-1/2} = e^{-z}/z
    CHECK(reduced_bessel(0.5, 1.3) == doctest::Approx(std::exp(-1.3)));
    CHECK(reduced_bessel(-0.5, 1.3) == doctest::Approx(std::exp(-1.3) / 1.3));
    // khat_{3/2}(z) = e^{-z}(1+z)
    CHECK(reduced_bessel(1.5, 0.7) == doctest::Approx(std::exp(-0.7) * 1.7));
}

TEST_CASE("reduced bessel recurrence") {
    // khat_{nu+1}(z) = z^2 khat_{nu-1}(z) + 2 nu khat_nu(z)
    for (double z : {0.3, 1.0, 4.0}) {
        for (int n = -2; n <= 5; ++n) {
            double nu = n - 0.5;
            double lhs = reduced_bessel(nu + 1.0, z);
            double rhs = z * z * reduced_bessel(nu - 1.0, z) +
                         2.0 * nu * reduced_bessel(nu, z);
            CHECK(lhs == doctest::Approx(rhs).epsilon(1e-12));
        }
    }
}

TEST_CASE("reduced bessel domain errors") {
    CHECK_THROWS_AS((void)reduced_bessel(0.5, 0.0), std::domain_error);
    CHECK_THROWS_AS((void)reduced_bessel(0.5, -1.0), std::domain_error);
    CHECK_THROWS_AS((void)reduced_bessel(0.3, 1.0), std::domain_error);
}

TEST_CASE("half integer modified bessel I") {
    CHECK(bessel_i_halfint(0.5, 1.0) ==
          doctest::Approx(0.93767488824548764).epsilon(1e-14));
    CHECK(bessel_i_halfint(1.5, 2.0) ==
          doctest::Approx(1.0994731886331102).epsilon(1e-14));
    // closed forms sqrt(2/(pi z)) sinh z and sqrt(2/(pi z))(cosh z - sinh z / z)
    for (double z : {0.2, 1.0, 3.0, 8.0}) {
        double pref = std::sqrt(2.0 / (pi * z));
        CHECK(bessel_i_halfint(0.5, z) ==
              doctest::Approx(pref * std::sinh(z)).epsilon(1e-13));
        CHECK(bessel_i_halfint(1.5, z) ==
              doctest::Approx(pref * (std::cosh(z) - std::sinh(z) / z))
                  .epsilon(1e-13));
        for (int l = 0; l <= 6; ++l)
            CHECK(bessel_i_halfint(l + 0.5, z) ==
                  doctest::Approx(std::cyl_bessel_i(l + 0.5, z)).epsilon(1e-13));
    }
    // scaled variant: e^{-z} I_mu(z)
    for (double z : {0.5, 5.0, 40.0})
        CHECK(bessel_i_halfint_scaled(2.5, z) ==
              doctest::Approx(std::exp(-z) * std::cyl_bessel_i(2.5, z))
                  .epsilon(1e-12));
    CHECK(bessel_i_halfint(0.5, 0.0) == 0.0);
    CHECK_THROWS_AS((void)bessel_i_halfint(0.5, -1.0), std::domain_error);
}

TEST_CASE("associated Legendre against the polynomial route") {
    CHECK(assoc_legendre(2, 1, 0.5) ==
          doctest::Approx(1.2990381056766580).epsilon(1e-14));
    for (double x : {-0.9, -0.4, 0.0, 0.3, 0.77}) {
        for (int l = 0; l <= 8; ++l)
            for (int m = 0; m <= l; ++m)
                CHECK(assoc_legendre(l, m, x) ==
                      doctest::Approx(oracle::assoc_legendre_poly(l, m, x))
                          .epsilon(1e-11));
    }
    CHECK(legendre_p(3, 0.4) == doctest::Approx(0.5 * (5 * 0.064 - 3 * 0.4)));
    CHECK_THROWS_AS((void)assoc_legendre(2, 3, 0.5), std::domain_error);
    CHECK_THROWS_AS((void)assoc_legendre(2, -1, 0.5), std::domain_error);
    CHECK_THROWS_AS((void)assoc_legendre(2, 0, 1.5), std::domain_error);
}

TEST_CASE("spherical harmonics closed forms for low degree") {
    // Condon-Shortley phase baked in: Y_1^1 carries the minus sign.
    for (double th : {0.3, 1.2, 2.5})
        for (double ph : {0.0, 0.9, 4.1}) {
            ComplexValue eip = std::polar(1.0, ph);
            CHECK(std::abs(spherical_harmonic({0, 0}, th, ph) -
                           ComplexValue(1.0 / std::sqrt(4.0 * pi))) < 1e-15);
            CHECK(std::abs(spherical_harmonic({1, 0}, th, ph) -
                           ComplexValue(std::sqrt(3.0 / (4.0 * pi)) *
                                        std::cos(th))) < 1e-14);
            CHECK(std::abs(spherical_harmonic({1, 1}, th, ph) -
                           (-std::sqrt(3.0 / (8.0 * pi)) * std::sin(th) * eip)) <
                  1e-14);
            CHECK(std::abs(spherical_harmonic({1, -1}, th, ph) -
                           (std::sqrt(3.0 / (8.0 * pi)) * std::sin(th) /
                            eip)) < 1e-14);
            CHECK(std::abs(spherical_harmonic({2, 2}, th, ph) -
                           (0.25 * std::sqrt(15.0 / (2.0 * pi)) *
                            std::sin(th) * std::sin(th) * eip * eip)) < 1e-14);
        }
}

TEST_CASE("spherical harmonic conjugation and sum rule") {
    for (int l = 0; l <= 6; ++l) {
        double th = 0.7 + 0.2 * l, ph = 1.3;
        double sum = 0.0;
        for (int m = -l; m <= l; ++m) {
            ComplexValue y = spherical_harmonic({l, m}, th, ph);
            ComplexValue yc = spherical_harmonic({l, -m}, th, ph);
            CHECK(std::abs(yc - (m % 2 == 0 ? 1.0 : -1.0) * std::conj(y)) <
                  1e-14);
            sum += std::norm(y);
        }
        CHECK(sum == doctest::Approx((2.0 * l + 1.0) / (4.0 * pi)).epsilon(1e-13));
    }
}

TEST_CASE("solid harmonic equals r^l times the surface harmonic") {
    auto rng = oracle::make_rng(91u);
    for (int trial = 0; trial < 12; ++trial) {
        Vector3 v = oracle::random_in_ball(rng, 2.5, 0.3);
        SphericalCoords sc = to_spherical(v);
        for (int l = 0; l <= 5; ++l)
            for (int m = -l; m <= l; ++m) {
                ComplexValue want = std::pow(sc.r, l) *
                                    spherical_harmonic({l, m}, sc.theta, sc.phi);
                CHECK(std::abs(solid_harmonic({l, m}, v) - want) <
                      1e-13 * std::max(1.0, std::abs(want)));
            }
    }
}

TEST_CASE("solid harmonic homogeneity and monomial expansion") {
    auto rng = oracle::make_rng(92u);
    Vector3 v = oracle::random_in_ball(rng, 1.5, 0.4);
    for (int l = 0; l <= 5; ++l)
        for (int m = -l; m <= l; ++m) {
            ComplexValue base = solid_harmonic({l, m}, v);
            CHECK(std::abs(solid_harmonic({l, m}, 3.0 * v) -
                           std::pow(3.0, l) * base) < 1e-12 * std::abs(base) + 1e-15);
            auto poly = oracle::solid_harmonic_monomials(l, m);
            CHECK(std::abs(oracle::eval_monomials(poly, v) - base) < 1e-13);
        }
}

TEST_CASE("solid harmonic table matches the scalar entry point") {
    auto rng = oracle::make_rng(93u);
    Vector3 v = oracle::random_in_ball(rng, 2.0, 0.2);
    auto table = solid_harmonic_table(v, 6);
    REQUIRE(table.size() == 49);
    for (int l = 0; l <= 6; ++l)
        for (int m = -l; m <= l; ++m)
            CHECK(std::abs(table[lm_flat(l, m)] - solid_harmonic({l, m}, v)) <
                  1e-15 * (1.0 + std::abs(table[lm_flat(l, m)])));
}

TEST_CASE("spherical coordinate round trip and pole convention") {
    auto rng = oracle::make_rng(94u);
    for (int trial = 0; trial < 20; ++trial) {
        Vector3 v = oracle::random_in_ball(rng, 3.0, 0.05);
        Vector3 back = from_spherical(to_spherical(v));
        CHECK(std::abs(back.x - v.x) < 1e-14 * (1.0 + std::abs(v.x)));
        CHECK(std::abs(back.y - v.y) < 1e-14 * (1.0 + std::abs(v.y)));
        CHECK(std::abs(back.z - v.z) < 1e-14 * (1.0 + std::abs(v.z)));
    }
    SphericalCoords north = to_spherical({0.0, 0.0, 2.0});
    CHECK(north.theta == 0.0);
    CHECK(north.phi == 0.0);
    SphericalCoords south = to_spherical({0.0, 0.0, -2.0});
    CHECK(south.theta == doctest::Approx(pi));
    CHECK(south.phi == 0.0);
    SphericalCoords origin = to_spherical({0.0, 0.0, 0.0});
    CHECK(origin.r == 0.0);
    CHECK(origin.theta == 0.0);
    CHECK(origin.phi == 0.0);
    // phi lives in [0, 2 pi)
    SphericalCoords q4 = to_spherical({1.0, -1.0, 0.0});
    CHECK(q4.phi == doctest::Approx(7.0 * pi / 4.0));
}
