#include "doctest.h"

#include <cmath>
#include <complex>

#include "bfn/angular.hpp"
#include "bfn/bfunction.hpp"
#include "bfn/combinatorics.hpp"
#include "bfn/specfunc.hpp"
#include "oracles.hpp"

using namespace bfn;

namespace {

// radial Fourier oracle: the transform of f(r) Y_l^m(Omega_r) under the
// (2 pi)^{-3/2} e^{-i p r} convention is
//   (2 pi)^{-3/2} 4 pi (-i)^l Y_l^m(Omega_p) int_0^inf j_l(p r) f(r) r^2 dr.
ComplexValue fourier_by_quadrature(const BIndex& idx, const Vector3& p) {
    double pn = p.norm();
    auto radial = [&](double r) {
        return std::ldexp(reciprocal_factorial(idx.n + idx.ell), -(idx.n + idx.ell)) *
               reduced_bessel(idx.n - 0.5, idx.alpha * r) *
               std::pow(idx.alpha * r, idx.ell);
    };
    double upper = 60.0 / idx.alpha;
    int panels = 40;
    std::vector<double> x, w;
    gauss_legendre(50, x, w);
    double integral = 0.0;
    for (int pa = 0; pa < panels; ++pa) {
        double a = upper * pa / panels, b = upper * (pa + 1) / panels;
        double mid = 0.5 * (a + b), half = 0.5 * (b - a);
        for (std::size_t i = 0; i < x.size(); ++i) {
            double r = mid + half * x[i];
            integral += half * w[i] * std::sph_bessel(idx.ell, pn * r) *
                        radial(r) * r * r;
        }
    }
    SphericalCoords sp = to_spherical(p);
    ComplexValue ylm = spherical_harmonic({idx.ell, idx.m}, sp.theta, sp.phi);
    ComplexValue il = 1.0;  // (-i)^l
    for (int k = 0; k < idx.ell; ++k) il *= ComplexValue(0.0, -1.0);
    return std::pow(2.0 * pi, -1.5) * 4.0 * pi * il * ylm * integral;
}

}  // namespace

TEST_CASE("b function point values") {
    // closed form at the north pole: B_{1,0}^0(1, z) = e^{-1}/2 / sqrt(4 pi)
    double want = 0.5 * std::exp(-1.0) / std::sqrt(4.0 * pi);
    CHECK(std::abs(b_eval({1, 0, 0, 1.0}, {0.0, 0.0, 1.0}) -
                   ComplexValue(want)) < 1e-16);
    CHECK(want == doctest::Approx(0.05188843717757435).epsilon(1e-15));
    // n = 0 goes through the reflection branch: khat_{-1/2}(2) = e^{-2}/2
    double want0 = 0.5 * std::exp(-2.0) / std::sqrt(4.0 * pi);
    CHECK(std::abs(b_eval({0, 0, 0, 1.0}, {0.0, 0.0, 2.0}) -
                   ComplexValue(want0)) < 1e-16);
    // generic complex value agrees with the assembled pieces
    BIndex idx{2, 1, 1, 0.8};
    Vector3 v{0.3, -0.4, 0.5};
    ComplexValue direct = b_eval(idx, v);
    double r = v.norm();
    ComplexValue assembled =
        std::ldexp(reciprocal_factorial(3), -3) *
        reduced_bessel(1.5, 0.8 * r) * solid_harmonic({1, 1}, 0.8 * v);
    CHECK(std::abs(direct - assembled) < 1e-16);
}

TEST_CASE("non classical indices vanish away from the origin") {
    CHECK(b_eval({-2, 1, 0, 1.0}, {0.0, 0.0, 1.0}) == ComplexValue(0.0));
    CHECK(b_eval({-5, 2, -1, 0.7}, {0.2, 0.1, -0.3}) == ComplexValue(0.0));
    // but they are singular at the origin and must refuse to evaluate there
    CHECK_THROWS_AS((void)b_eval({-2, 1, 0, 1.0}, {0.0, 0.0, 0.0}),
                    std::domain_error);
}

TEST_CASE("values at the origin") {
    // positive n, ell = 0: (2n-3)!! / (2^n n!) / sqrt(4 pi)
    Vector3 zero{0.0, 0.0, 0.0};
    CHECK(std::abs(b_eval({1, 0, 0, 1.0}, zero) -
                   ComplexValue(0.5 / std::sqrt(4.0 * pi))) < 1e-16);
    CHECK(std::abs(b_eval({2, 0, 0, 1.0}, zero) -
                   ComplexValue(0.125 / std::sqrt(4.0 * pi))) < 1e-16);
    CHECK(std::abs(b_eval({3, 0, 0, 2.5}, zero) -
                   ComplexValue(3.0 / 48.0 / std::sqrt(4.0 * pi))) < 1e-16);
    // positive n, ell > 0: zero
    CHECK(b_eval({2, 1, 0, 1.0}, zero) == ComplexValue(0.0));
    CHECK(b_eval({1, 3, 2, 0.6}, zero) == ComplexValue(0.0));
    // n <= 0: zero when 2n - 1 + ell > 0, singular otherwise
    CHECK(b_eval({0, 2, 0, 1.0}, zero) == ComplexValue(0.0));
    CHECK_THROWS_AS((void)b_eval({0, 0, 0, 1.0}, zero), std::domain_error);
    CHECK_THROWS_AS((void)b_eval({-1, 3, 0, 1.0}, zero), std::domain_error);
}

TEST_CASE("index validation") {
    CHECK_THROWS_AS((void)b_eval({1, -1, 0, 1.0}, {0, 0, 1}), std::domain_error);
    CHECK_THROWS_AS((void)b_eval({1, 1, 2, 1.0}, {0, 0, 1}), std::domain_error);
    CHECK_THROWS_AS((void)b_eval({1, 0, 0, 0.0}, {0, 0, 1}), std::domain_error);
    CHECK_THROWS_AS((void)b_eval({1, 0, 0, -1.0}, {0, 0, 1}), std::domain_error);
}

TEST_CASE("fourier transform closed form checks") {
    // (1,0,0), alpha 1, p = 0: sqrt(2/pi) / sqrt(4 pi) = 1/(pi sqrt 2)
    ComplexValue v0 = b_fourier({1, 0, 0, 1.0}, {0.0, 0.0, 0.0});
    CHECK(std::abs(v0 - ComplexValue(1.0 / (pi * std::sqrt(2.0)))) < 1e-16);
    CHECK(v0.real() == doctest::Approx(0.22507907903927651).epsilon(1e-15));
    // (1,1,0) at unit momentum along z is purely imaginary with known modulus
    ComplexValue v1 = b_fourier({1, 1, 0, 1.0}, {0.0, 0.0, 1.0});
    CHECK(v1.real() == doctest::Approx(0.0));
    double mod = std::sqrt(2.0 / pi) * 0.125 * std::sqrt(3.0 / (4.0 * pi));
    CHECK(std::abs(v1.imag() + mod) < 1e-16);  // (-i)^1 picks the lower sign
    // rational decay in |p|
    double big = std::abs(b_fourier({2, 1, 1, 1.0}, {0.0, 30.0, 0.0}));
    double small = std::abs(b_fourier({2, 1, 1, 1.0}, {0.0, 60.0, 0.0}));
    // scale ~ p^l / (1+p^2)^{n+l+1}: doubling p shrinks by ~ 2^{2(n+l+1)-l}
    CHECK(small < big / 100.0);
    CHECK_THROWS_AS((void)b_fourier({-3, 1, 0, 1.0}, {0, 0, 1}),
                    std::domain_error);
}

TEST_CASE("fourier transform against radial quadrature") {
    const Vector3 momenta[] = {{0.0, 0.0, 0.5},
                               {0.43, 0.21, -0.6},
                               {-1.1, 0.4, 0.9}};
    for (const BIndex idx : {BIndex{1, 0, 0, 1.0}, BIndex{2, 1, 1, 0.8},
                             BIndex{3, 2, -1, 1.3}}) {
        for (const Vector3& p : momenta) {
            ComplexValue want = fourier_by_quadrature(idx, p);
            ComplexValue got = b_fourier(idx, p);
            CHECK(std::abs(got - want) < 1e-9 * std::max(1.0, std::abs(want)));
        }
    }
}

TEST_CASE("ladder operator lowers the order index") {
    BExpansion e;
    e.alpha = 1.0;
    e.terms = {{2.0, 2, 1, 0}, {-1.0, 3, 0, 0}};
    BExpansion down = ladder_down(e);
    REQUIRE(down.terms.size() == 2);
    CHECK(down.terms[0].n == 2);  // sorted: ell 0 first
    CHECK(down.terms[0].ell == 0);
    CHECK(down.terms[0].coeff == ComplexValue(-1.0));
    CHECK(down.terms[1].n == 1);
    CHECK(down.terms[1].ell == 1);
    BExpansion empty;
    empty.alpha = 1.0;
    CHECK(ladder_down(empty).terms.empty());
}

TEST_CASE("ladder operator against finite differences") {
    // (1 - laplacian / alpha^2) B_{n,l}^m = B_{n-1,l}^m
    BIndex idx{3, 1, 1, 0.9};
    auto f = [&](const Vector3& q) { return b_eval(idx, q); };
    Vector3 p{0.7, -0.3, 0.5};
    auto lap_at = [&](double h) { return oracle::fd_laplacian(f, p, h); };
    // Richardson extrapolation of the second-order stencil
    ComplexValue lap = (4.0 * lap_at(2e-3) - lap_at(4e-3)) / 3.0;
    ComplexValue got = b_eval(idx, p) - lap / (0.9 * 0.9);
    ComplexValue want = b_eval({2, 1, 1, 0.9}, p);
    CHECK(std::abs(got - want) < 1e-8 * std::max(1.0, std::abs(want)));
}

TEST_CASE("laplacian powers expand into order-lowered sums") {
    BExpansion e0 = laplacian_power(0, {3, 2, 1, 1.1});
    REQUIRE(e0.terms.size() == 1);
    CHECK(e0.terms[0].coeff == ComplexValue(1.0));
    CHECK(e0.terms[0].n == 3);

    BExpansion e1 = laplacian_power(1, {3, 2, 1, 1.1});
    REQUIRE(e1.terms.size() == 2);
    CHECK(e1.terms[0].n == 3);
    CHECK(e1.terms[0].coeff == ComplexValue(1.0));
    CHECK(e1.terms[1].n == 2);
    CHECK(e1.terms[1].coeff == ComplexValue(-1.0));

    BExpansion e2 = laplacian_power(2, {3, 0, 0, 1.0});
    REQUIRE(e2.terms.size() == 3);
    CHECK(e2.terms[0].n == 3);
    CHECK(e2.terms[0].coeff == ComplexValue(1.0));
    CHECK(e2.terms[1].n == 2);
    CHECK(e2.terms[1].coeff == ComplexValue(-2.0));
    CHECK(e2.terms[2].n == 1);
    CHECK(e2.terms[2].coeff == ComplexValue(1.0));

    CHECK_THROWS_AS((void)laplacian_power(-1, {3, 0, 0, 1.0}),
                    std::domain_error);
}

TEST_CASE("laplacian power against finite differences") {
    BIndex idx{3, 1, 0, 1.0};
    Vector3 p{0.5, 0.4, -0.6};
    auto f = [&](const Vector3& q) { return b_eval(idx, q); };
    auto lap_at = [&](double h) { return oracle::fd_laplacian(f, p, h); };
    ComplexValue want = (4.0 * lap_at(2e-3) - lap_at(4e-3)) / 3.0;
    ComplexValue got = expansion_eval(laplacian_power(1, idx), p);
    CHECK(std::abs(got - want) < 1e-8 * std::max(1.0, std::abs(want)));
}

TEST_CASE("gradient tensor operator structural examples") {
    // rank zero operator is multiplication by 1/sqrt(4 pi)
    BExpansion id = stgo_on_b({0, 0}, {3, 2, -1, 1.3});
    REQUIRE(id.terms.size() == 1);
    CHECK(id.terms[0].n == 3);
    CHECK(id.terms[0].ell == 2);
    CHECK(id.terms[0].m == -1);
    CHECK(std::abs(id.terms[0].coeff - ComplexValue(1.0 / std::sqrt(4.0 * pi))) <
          1e-16);

    // rank one on an s-type B function: single channel, one order drop
    BExpansion g = stgo_on_b({1, 0}, {2, 0, 0, 1.5});
    REQUIRE(g.terms.size() == 1);
    CHECK(g.terms[0].n == 1);
    CHECK(g.terms[0].ell == 1);
    CHECK(g.terms[0].m == 0);
    CHECK(std::abs(g.terms[0].coeff -
                   ComplexValue(-1.5 / std::sqrt(4.0 * pi))) < 1e-15);

    // rank one on a p-type B function opens the ell = 0 and ell = 2 channels
    BExpansion two = stgo_on_b({1, 0}, {2, 1, 0, 1.0});
    bool saw0 = false, saw2 = false;
    for (const auto& t : two.terms) {
        if (t.ell == 0) saw0 = true;
        if (t.ell == 2) saw2 = true;
    }
    CHECK(saw0);
    CHECK(saw2);
}

TEST_CASE("gradient tensor operator against nested finite differences") {
    auto check_case = [](const TensorIndex& op, const BIndex& idx,
                         const Vector3& p) {
        auto f = [&](const Vector3& q) { return b_eval(idx, q); };
        auto poly = oracle::solid_harmonic_monomials(op.ell, op.m);
        auto fd_at = [&](double h) {
            return oracle::apply_gradient_polynomial(poly, f, p, h);
        };
        ComplexValue want = (4.0 * fd_at(2e-3) - fd_at(4e-3)) / 3.0;
        ComplexValue got = expansion_eval(stgo_on_b(op, idx), p);
        CHECK(std::abs(got - want) < 1e-7 * std::max(1.0, std::abs(want)));
    };
    Vector3 p{0.6, -0.5, 0.8};
    check_case({1, 0}, {2, 0, 0, 1.0}, p);
    check_case({1, 1}, {2, 1, 0, 0.9}, p);
    check_case({2, -1}, {3, 1, 1, 1.1}, p);
    check_case({2, 2}, {3, 2, -2, 0.8}, p);
}

TEST_CASE("scalar reduction reconstructs the original function") {
    for (const BIndex idx : {BIndex{1, 1, 0, 1.0}, BIndex{2, 1, -1, 0.8},
                             BIndex{1, 2, 2, 1.2}}) {
        ScalarReduction red = scalar_reduction(idx);
        CHECK(red.scalar.n == idx.n + idx.ell);
        CHECK(red.scalar.ell == 0);
        CHECK(red.scalar.m == 0);
        BExpansion applied = stgo_on_b(red.op, red.scalar);
        auto rng = oracle::make_rng(55u);
        for (int trial = 0; trial < 4; ++trial) {
            Vector3 p = oracle::random_in_ball(rng, 2.0, 0.3);
            ComplexValue rebuilt = red.prefactor * expansion_eval(applied, p);
            ComplexValue direct = b_eval(idx, p);
            CHECK(std::abs(rebuilt - direct) <
                  1e-10 * std::max(1.0, std::abs(direct)));
        }
    }
}

TEST_CASE("expansion normalization sorts, merges, and drops") {
    BExpansion e;
    e.alpha = 1.0;
    e.terms = {{1.0, 2, 1, 0},  {2.0, 2, 0, 0}, {3.0, 2, 1, 0},
               {1e-320, 5, 2, 0}, {0.5, 3, 0, 0}};
    normalize(e);
    REQUIRE(e.terms.size() == 3);
    CHECK(e.terms[0].ell == 0);
    CHECK(e.terms[0].n == 3);  // within (ell, m): descending n
    CHECK(e.terms[1].ell == 0);
    CHECK(e.terms[1].n == 2);
    CHECK(e.terms[2].ell == 1);
    CHECK(e.terms[2].coeff == ComplexValue(4.0));  // merged 1 + 3
    BExpansion bad;
    bad.alpha = 1.0;
    bad.terms = {{std::numeric_limits<double>::quiet_NaN(), 1, 0, 0}};
    CHECK_THROWS_AS(normalize(bad), std::domain_error);
}
