#include "bfn/bfunction.hpp"

#include <algorithm>

#include "bfn/angular.hpp"
#include "bfn/combinatorics.hpp"
#include "bfn/specfunc.hpp"

namespace bfn {

namespace {

void validate_index(const BIndex& idx) {
    if (idx.ell < 0 || std::abs(idx.m) > idx.ell)
        throw std::domain_error("BIndex: require ell >= 0 and |m| <= ell");
    if (!(idx.alpha > 0.0))
        throw std::domain_error("BIndex: require alpha > 0");
}

// 1 / (2^k k!) for the normalizing front factor.
double inv_pow2_factorial(int k) {
    if (k <= 170) return std::ldexp(reciprocal_factorial(k), -k);
    return std::exp(-std::lgamma(k + 1.0) - k * std::numbers::ln2);
}

// (-i)^ell
ComplexValue minus_i_pow(int ell) {
    switch (((ell % 4) + 4) % 4) {
        case 0: return {1.0, 0.0};
        case 1: return {0.0, -1.0};
        case 2: return {-1.0, 0.0};
        default: return {0.0, 1.0};
    }
}

}  // namespace

ComplexValue b_eval(const BIndex& idx, const Vector3& r) {
    validate_index(idx);
    const int ne = idx.n + idx.ell;
    const double rn = r.norm();
    if (rn == 0.0) {
        if (ne < 0)
            throw std::domain_error("b_eval: non-classical index is undefined at the origin");
        if (idx.n >= 1) {
            if (idx.ell > 0) return 0.0;
            // khat_{n-1/2}(z) -> (2n-3)!! as z -> 0 for n >= 1
            return double_factorial_d(2 * idx.n - 3) * inv_pow2_factorial(idx.n) /
                   std::sqrt(4.0 * pi);
        }
        // n <= 0: khat_{n-1/2}(z) ~ z^{2n-1} (-2n-1)!!, solid harmonic ~ z^ell
        if (2 * idx.n - 1 + idx.ell > 0) return 0.0;
        throw std::domain_error(
            "b_eval: divergent or direction-dependent limit at the origin");
    }
    if (ne < 0) return 0.0;
    double khat = reduced_bessel(idx.n - 0.5, idx.alpha * rn);
    ComplexValue ylm = solid_harmonic({idx.ell, idx.m}, idx.alpha * r);
    return inv_pow2_factorial(ne) * khat * ylm;
}

ComplexValue b_fourier(const BIndex& idx, const Vector3& p) {
    validate_index(idx);
    if (!idx.classical())
        throw std::domain_error("b_fourier: non-classical index has no Fourier transform");
    const double a = idx.alpha;
    double radial = std::sqrt(2.0 / pi) * std::pow(a, 2 * idx.n + idx.ell - 1) /
                    std::pow(a * a + p.norm2(), idx.n + idx.ell + 1);
    return radial * minus_i_pow(idx.ell) * solid_harmonic({idx.ell, idx.m}, p);
}

void normalize(BExpansion& e) {
    for (const BTerm& t : e.terms) {
        if (t.ell < 0 || std::abs(t.m) > t.ell)
            throw std::domain_error("BExpansion: term with invalid (ell, m)");
        if (!(std::isfinite(t.coeff.real()) && std::isfinite(t.coeff.imag())))
            throw std::domain_error("BExpansion: non-finite coefficient");
    }
    std::sort(e.terms.begin(), e.terms.end(), [](const BTerm& a, const BTerm& b) {
        if (a.ell != b.ell) return a.ell < b.ell;
        if (a.m != b.m) return a.m < b.m;
        return a.n > b.n;
    });
    std::vector<BTerm> out;
    out.reserve(e.terms.size());
    for (const BTerm& t : e.terms) {
        if (!out.empty() && out.back().n == t.n && out.back().ell == t.ell &&
            out.back().m == t.m) {
            out.back().coeff += t.coeff;
        } else {
            out.push_back(t);
        }
    }
    std::erase_if(out, [](const BTerm& t) { return std::abs(t.coeff) < 1e-300; });
    e.terms = std::move(out);
}

BExpansion ladder_down(const BExpansion& e) {
    BExpansion out;
    out.alpha = e.alpha;
    out.terms.reserve(e.terms.size());
    for (const BTerm& t : e.terms) out.terms.push_back({t.coeff, t.n - 1, t.ell, t.m});
    normalize(out);
    return out;
}

BExpansion laplacian_power(int nu, const BIndex& idx) {
    if (nu < 0) throw std::domain_error("laplacian_power: require nu >= 0");
    validate_index(idx);
    BExpansion out;
    out.alpha = idx.alpha;
    out.terms.reserve(nu + 1);
    for (int t = 0; t <= nu; ++t)
        out.terms.push_back(
            {minus_one_pow(t) * binomial_d(nu, t), idx.n - t, idx.ell, idx.m});
    normalize(out);
    return out;
}

BExpansion stgo_on_b(const TensorIndex& op, const BIndex& idx) {
    validate(op);
    validate_index(idx);
    BExpansion out;
    out.alpha = idx.alpha;
    const double scale = std::pow(-idx.alpha, op.ell);
    const int m_out = op.m + idx.m;
    CouplingRange cr = coupling_range(op.ell, op.m, idx.ell, idx.m);
    for (int ell = cr.ell_min; ell <= cr.ell_max; ell += cr.step) {
        double g = gaunt({op.ell, op.m, idx.ell, idx.m, ell, m_out});
        if (g == 0.0) continue;
        int d_ell = delta_quantities(op.ell, idx.ell, ell).d_ell;
        for (int t = 0; t <= d_ell; ++t)
            out.terms.push_back({scale * g * minus_one_pow(t) * binomial_d(d_ell, t),
                                 idx.n + idx.ell - ell - t, ell, m_out});
    }
    normalize(out);
    return out;
}

ScalarReduction scalar_reduction(const BIndex& idx) {
    validate_index(idx);
    if (!idx.classical())
        throw std::domain_error("scalar_reduction: requires a classical index");
    double prefactor = std::sqrt(4.0 * pi) / std::pow(-idx.alpha, idx.ell);
    return {prefactor, {idx.ell, idx.m}, {idx.n + idx.ell, 0, 0, idx.alpha}};
}

ComplexValue expansion_eval(const BExpansion& e, const Vector3& r) {
    ComplexValue acc = 0.0;
    for (const BTerm& t : e.terms)
        acc += t.coeff * b_eval({t.n, t.ell, t.m, e.alpha}, r);
    return acc;
}

}  // namespace bfn
