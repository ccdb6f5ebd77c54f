#include "bfn/addition.hpp"

#include <algorithm>
#include <cstdint>
#include <unordered_map>

#include "bfn/angular.hpp"
#include "bfn/combinatorics.hpp"
#include "bfn/specfunc.hpp"

namespace bfn {

namespace detail {

double radial_bessel_kernel(int l1, int t, double z) {
    if (l1 < 0 || t < 0)
        throw std::domain_error("radial_bessel_kernel: negative index");
    if (z < 0.0) throw std::domain_error("radial_bessel_kernel: require z >= 0");
    double x = 0.25 * z * z;
    double b = l1 + t + 1.5;
    double term = 1.0, sum = 1.0;
    bool converged = (x == 0.0);
    for (int j = 1; j <= 200 && !converged; ++j) {
        term *= x / (j * (b + j - 1));
        sum += term;
        if (term <= 1e-16 * sum) converged = true;
    }
    if (!converged)
        throw std::runtime_error("radial_bessel_kernel: series did not converge");
    double zp = std::pow(z, 2 * t);  // z = 0: exactly 1 for t = 0, else 0
    return std::sqrt(2.0 / pi) * zp / double_factorial_d(2 * (l1 + t) + 1) * sum;
}

namespace {

void validate_two_range(const BIndex& idx, double s, double l, const TruncationSpec& trunc) {
    if (!idx.classical())
        throw std::domain_error("b_addition: non-classical index");
    if (trunc.ell1_max < 0 || !(trunc.rel_tol > 0.0))
        throw std::domain_error("b_addition: invalid truncation spec");
    if (!(s < l))
        throw std::domain_error("b_addition: require |r_small| < |r_large| strictly");
}

// Memoized b_eval at a fixed evaluation point and scale, keyed by (n, ell, m).
struct BEvalMemo {
    double alpha;
    Vector3 r;
    std::unordered_map<std::uint64_t, ComplexValue> map;

    ComplexValue eval(int n, int ell, int m) {
        std::uint64_t key = ((std::uint64_t)(std::uint32_t)(n + (1 << 20))) |
                            ((std::uint64_t)(std::uint32_t)ell << 22) |
                            ((std::uint64_t)(std::uint32_t)(m + (1 << 20)) << 42);
        auto it = map.find(key);
        if (it != map.end()) return it->second;
        ComplexValue v = b_eval({n, ell, m, alpha}, r);
        map.emplace(key, v);
        return v;
    }
};

}  // namespace

std::pair<ComplexValue, ConvergenceReport> b_addition_impl(const BIndex& idx,
                                                           const Vector3& r_small,
                                                           const Vector3& r_large,
                                                           const TruncationSpec& trunc,
                                                           bool clamp_inner_sum) {
    const double s = r_small.norm(), l = r_large.norm();
    validate_two_range(idx, s, l, trunc);

    ConvergenceReport rep;
    const ComplexValue ref = b_eval(idx, r_small + r_large);
    rep.reference = ref;
    if (s == 0.0) {
        // Translation by zero: only the scalar outer term survives the limit,
        // and it reproduces the function exactly.
        rep.partial_values = {ref};
        rep.errors = {0.0};
        rep.converged_at = 0;
        return {ref, rep};
    }

    const int N = idx.n + idx.ell;
    const double zs = idx.alpha * s;
    const double pref =
        std::pow(2.0 * pi, 1.5) * minus_one_pow(N) * std::ldexp(1.0, -N);

    const auto ytab = solid_harmonic_table(idx.alpha * r_small, trunc.ell1_max);
    BEvalMemo memo{idx.alpha, r_large, {}};

    ComplexValue partial = 0.0;
    int below = 0;
    for (int l1 = 0; l1 <= trunc.ell1_max; ++l1) {
        ComplexValue shell = 0.0;
        for (int m1 = -l1; m1 <= l1; ++m1) {
            const ComplexValue yc = std::conj(ytab[lm_flat(l1, m1)]);
            if (yc == 0.0) continue;
            const CouplingRange cr = coupling_range(l1, m1, idx.ell, idx.m);
            ComplexValue qsum = 0.0;
            for (int q = 0; q <= N; ++q) {
                double w = minus_one_pow(q) * std::ldexp(1.0, q) *
                           reciprocal_factorial(N - q) *
                           radial_bessel_kernel(l1, N - q, zs);
                if (w == 0.0) continue;
                ComplexValue coupled = 0.0;
                for (int l2 = cr.ell_min; l2 <= cr.ell_max; l2 += cr.step) {
                    double g = gaunt({l1, m1, idx.ell, idx.m, l2, idx.m + m1});
                    if (g == 0.0) continue;
                    const int d2 = delta_quantities(l1, idx.ell, l2).d_ell;
                    const int s_max = clamp_inner_sum ? std::min(q, d2) : d2;
                    ComplexValue inner = 0.0;
                    for (int t = 0; t <= s_max; ++t)
                        inner += minus_one_pow(t) * binomial_d(d2, t) *
                                 memo.eval(q - l2 - t, l2, idx.m + m1);
                    coupled += g * inner;
                }
                qsum += w * coupled;
            }
            shell += minus_one_pow(l1) * yc * qsum;
        }
        const ComplexValue contribution = pref * shell;
        partial += contribution;
        rep.partial_values.push_back(partial);
        if (std::abs(contribution) <= trunc.rel_tol * std::abs(partial))
            ++below;
        else
            below = 0;
        if (below >= 2 && !rep.converged_at) {
            rep.converged_at = l1;
            if (trunc.mode == TruncationMode::adaptive) break;
        }
    }
    const double den = std::max(std::abs(ref), kRelErrorFloor);
    rep.errors.reserve(rep.partial_values.size());
    for (const ComplexValue& p : rep.partial_values)
        rep.errors.push_back(std::abs(p - ref) / den);
    return {rep.partial_values.back(), rep};
}

}  // namespace detail

std::pair<ComplexValue, ConvergenceReport> b_addition(const BIndex& idx,
                                                      const Vector3& r_small,
                                                      const Vector3& r_large,
                                                      const TruncationSpec& trunc) {
    return detail::b_addition_impl(idx, r_small, r_large, trunc, true);
}

ComplexValue b_addition_midform(const BIndex& idx, const Vector3& r_small,
                                const Vector3& r_large, const TruncationSpec& trunc) {
    const double s = r_small.norm(), l = r_large.norm();
    detail::validate_two_range(idx, s, l, trunc);
    if (s == 0.0) return b_eval(idx, r_small + r_large);

    const int N = idx.n + idx.ell;
    const double zs = idx.alpha * s;
    const double pref = std::pow(2.0 * pi, 1.5);
    // The solid harmonics of the *unscaled* inner vector: the factor
    // alpha^{l1} lives inside the gradient-operator expansion instead.
    const auto ytab = solid_harmonic_table(r_small, trunc.ell1_max);

    ComplexValue partial = 0.0;
    int below = 0;
    for (int l1 = 0; l1 <= trunc.ell1_max; ++l1) {
        ComplexValue shell = 0.0;
        for (int m1 = -l1; m1 <= l1; ++m1) {
            const ComplexValue yc = std::conj(ytab[lm_flat(l1, m1)]);
            if (yc == 0.0) continue;
            ComplexValue tsum = 0.0;
            for (int t = 0; t <= N; ++t) {
                double w = minus_one_pow(t) * std::ldexp(reciprocal_factorial(t), -t) *
                           detail::radial_bessel_kernel(l1, t, zs);
                if (w == 0.0) continue;
                BExpansion ex = stgo_on_b({l1, m1}, {idx.n - t, idx.ell, idx.m, idx.alpha});
                tsum += w * expansion_eval(ex, r_large);
            }
            shell += yc * tsum;
        }
        const ComplexValue contribution = pref * shell;
        partial += contribution;
        if (std::abs(contribution) <= trunc.rel_tol * std::abs(partial))
            ++below;
        else
            below = 0;
        if (below >= 2 && trunc.mode == TruncationMode::adaptive) break;
    }
    return partial;
}

std::vector<ConvergenceRow> convergence_table(const BIndex& idx,
                                              const std::vector<AdditionGeometry>& geometries,
                                              const std::vector<int>& cutoffs) {
    std::vector<ConvergenceRow> rows;
    if (geometries.empty() || cutoffs.empty()) return rows;
    int c_max = 0;
    for (int c : cutoffs) {
        if (c < 0) throw std::domain_error("convergence_table: negative cutoff");
        c_max = std::max(c_max, c);
    }
    TruncationSpec trunc{c_max, 1e-12, TruncationMode::fixed_order};
    for (std::size_t gi = 0; gi < geometries.size(); ++gi) {
        auto [value, rep] = b_addition(idx, geometries[gi].r_small,
                                       geometries[gi].r_large, trunc);
        (void)value;
        for (int c : cutoffs) {
            // r_small = 0 produces a single exact partial; clamp for it.
            std::size_t i = std::min<std::size_t>(c, rep.partial_values.size() - 1);
            rows.push_back({gi, c, rep.partial_values[i], *rep.reference, rep.errors[i]});
        }
    }
    return rows;
}

double exp_dot_spherical(const Vector3& a, const Vector3& b, int L, int K) {
    if (L < 0 || K < 0)
        throw std::domain_error("exp_dot_spherical: require L, K >= 0");
    const auto ya = solid_harmonic_table(a, L);
    const auto yb = solid_harmonic_table(b, L);
    const double a2b2 = a.norm2() * b.norm2();
    double total = 0.0;
    for (int ell = 0; ell <= L; ++ell) {
        double term = 2.0 / double_factorial_d(2 * ell + 1);
        double ksum = term;
        for (int k = 1; k <= K; ++k) {
            term *= a2b2 / (4.0 * k * (ell + k + 0.5));
            ksum += term;
        }
        ComplexValue ang = 0.0;
        for (int m = -ell; m <= ell; ++m)
            ang += std::conj(ya[lm_flat(ell, m)]) * yb[lm_flat(ell, m)];
        total += ang.real() * ksum;  // the m-sum is real by conjugation symmetry
    }
    return 2.0 * pi * total;
}

double exp_dot_legendre(const Vector3& a, const Vector3& b, int L) {
    if (L < 0) throw std::domain_error("exp_dot_legendre: require L >= 0");
    const double na = a.norm(), nb = b.norm();
    if (na == 0.0 || nb == 0.0)
        throw std::domain_error("exp_dot_legendre: zero-length vector");
    const double ab = na * nb;
    double c = dot(a, b) / ab;
    c = std::clamp(c, -1.0, 1.0);
    double sum = 0.0;
    for (int ell = 0; ell <= L; ++ell)
        sum += (2 * ell + 1) * bessel_i_halfint(ell + 0.5, ab) * legendre_p(ell, c);
    return std::sqrt(pi / (2.0 * ab)) * sum;
}

}  // namespace bfn
