#include "bfn/basis_sets.hpp"

#include <string>

#include "bfn/combinatorics.hpp"
#include "bfn/specfunc.hpp"

namespace bfn {

namespace {

void validate_spec(const RadialBasisSpec& s) {
    if (s.ell < 0 || std::abs(s.m) > s.ell)
        throw std::domain_error("RadialBasisSpec: require ell >= 0 and |m| <= ell");
    if (s.n < s.ell + 1)
        throw std::domain_error("RadialBasisSpec: require n >= ell + 1");
    if (!(s.scale > 0.0))
        throw std::domain_error("RadialBasisSpec: require positive scale");
}

void require_kind(const RadialBasisSpec& s, RadialBasisKind kind, const char* who) {
    if (s.kind != kind)
        throw std::domain_error(std::string(who) + ": spec has the wrong basis kind");
}

}  // namespace

double laguerre(int degree, double a, double x) {
    if (degree < 0) throw std::domain_error("laguerre: negative degree");
    if (degree == 0) return 1.0;
    double lkm1 = 1.0, lk = 1.0 + a - x;
    for (int k = 1; k < degree; ++k) {
        double lkp1 = ((2 * k + 1 + a - x) * lk - (k + a) * lkm1) / (k + 1);
        lkm1 = lk;
        lk = lkp1;
    }
    return lk;
}

ComplexValue eval_direct(const RadialBasisSpec& spec, const Vector3& r) {
    validate_spec(spec);
    const int n = spec.n, ell = spec.ell, m = spec.m;
    const double rn = r.norm();
    switch (spec.kind) {
        case RadialBasisKind::slater: {
            const double a = spec.scale;
            SphericalCoords sc = to_spherical(r);
            return std::pow(a * rn, n - 1) * std::exp(-a * rn) *
                   spherical_harmonic({ell, m}, sc.theta, sc.phi);
        }
        case RadialBasisKind::hydrogenic: {
            const double a = spec.scale / n;  // scale holds Z
            double norm = std::pow(2.0 * a, 1.5) *
                          std::sqrt(factorial_d(n - ell - 1) / (2.0 * n * factorial_d(n + ell)));
            return norm * std::exp(-a * rn) * laguerre(n - ell - 1, 2 * ell + 1, 2.0 * a * rn) *
                   solid_harmonic({ell, m}, 2.0 * a * r);
        }
        case RadialBasisKind::lambda: {
            const double a = spec.scale;
            double norm = std::pow(2.0 * a, 1.5) *
                          std::sqrt(factorial_d(n - ell - 1) / factorial_d(n + ell + 1));
            return norm * std::exp(-a * rn) * laguerre(n - ell - 1, 2 * ell + 2, 2.0 * a * rn) *
                   solid_harmonic({ell, m}, 2.0 * a * r);
        }
        case RadialBasisKind::sturmian: {
            const double a = spec.scale;
            double norm = std::pow(2.0 * a, 1.5) *
                          std::sqrt(factorial_d(n - ell - 1) / (2.0 * n * factorial_d(n + ell)));
            return norm * std::exp(-a * rn) * laguerre(n - ell - 1, 2 * ell + 1, 2.0 * a * rn) *
                   solid_harmonic({ell, m}, 2.0 * a * r);
        }
    }
    throw std::domain_error("eval_direct: unknown basis kind");
}

BExpansion sto_to_b(const RadialBasisSpec& spec) {
    require_kind(spec, RadialBasisKind::slater, "sto_to_b");
    validate_spec(spec);
    const int n = spec.n, ell = spec.ell;
    BExpansion out;
    out.alpha = spec.scale;
    for (int p = (n - ell) / 2; p <= n - ell; ++p) {
        // Terms with 2p - n + ell < 0 vanish through the reciprocal factorial.
        double c = minus_one_pow(n - ell - p) * factorial_d(n - ell) *
                   std::ldexp(factorial_d(ell + p), ell + p) *
                   reciprocal_factorial(2 * p - n + ell) /
                   double_factorial_d(2 * (n - ell - p));
        out.terms.push_back({c, p, ell, spec.m});
    }
    normalize(out);
    return out;
}

namespace {

// Shared coefficient pattern of the Laguerre-based conversions: the t-th term
// multiplies B_{t+1, ell}^m at the expansion scale.
BExpansion laguerre_series_to_b(const RadialBasisSpec& spec, double alpha, double pref,
                                double poch_upper_offset, double poch_lower_base) {
    const int n = spec.n, ell = spec.ell;
    BExpansion out;
    out.alpha = alpha;
    for (int t = 0; t <= n - ell - 1; ++t) {
        double c = pref * pochhammer(-n + ell + 1, t) *
                   pochhammer(n + ell + poch_upper_offset, t) /
                   (factorial_d(t) * pochhammer(poch_lower_base, t));
        out.terms.push_back({c, t + 1, ell, spec.m});
    }
    normalize(out);
    return out;
}

}  // namespace

BExpansion hydrogenic_to_b(const RadialBasisSpec& spec) {
    require_kind(spec, RadialBasisKind::hydrogenic, "hydrogenic_to_b");
    validate_spec(spec);
    const int n = spec.n, ell = spec.ell;
    const double a = spec.scale / n;
    double pref = std::pow(2.0 * a, 1.5) * std::ldexp(1.0, ell + 1) /
                  double_factorial_d(2 * ell + 1) *
                  std::sqrt(n * factorial_d(n + ell) / (2.0 * factorial_d(n - ell - 1)));
    return laguerre_series_to_b(spec, a, pref, 1.0, ell + 1.5);
}

BExpansion lambda_to_b(const RadialBasisSpec& spec) {
    require_kind(spec, RadialBasisKind::lambda, "lambda_to_b");
    validate_spec(spec);
    const int n = spec.n, ell = spec.ell;
    const double a = spec.scale;
    double pref = std::pow(2.0 * a, 1.5) * std::ldexp(1.0, ell) * (2 * n + 1) /
                  double_factorial_d(2 * ell + 3) *
                  std::sqrt(factorial_d(n + ell + 1) / factorial_d(n - ell - 1));
    return laguerre_series_to_b(spec, a, pref, 2.0, ell + 2.5);
}

BExpansion sturmian_to_b(const RadialBasisSpec& spec) {
    require_kind(spec, RadialBasisKind::sturmian, "sturmian_to_b");
    validate_spec(spec);
    const int n = spec.n, ell = spec.ell;
    const double a = spec.scale;
    double pref = std::pow(2.0 * a, 1.5) * std::ldexp(1.0, ell + 1) /
                  double_factorial_d(2 * ell + 1) *
                  std::sqrt(n * factorial_d(n + ell) / (2.0 * factorial_d(n - ell - 1)));
    return laguerre_series_to_b(spec, a, pref, 1.0, ell + 1.5);
}

BExpansion to_b_expansion(const RadialBasisSpec& spec) {
    switch (spec.kind) {
        case RadialBasisKind::slater: return sto_to_b(spec);
        case RadialBasisKind::hydrogenic: return hydrogenic_to_b(spec);
        case RadialBasisKind::lambda: return lambda_to_b(spec);
        case RadialBasisKind::sturmian: return sturmian_to_b(spec);
    }
    throw std::domain_error("to_b_expansion: unknown basis kind");
}

}  // namespace bfn
