#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "bfn/bfunction.hpp"

namespace bfn {

enum class TruncationMode { fixed_order, adaptive };

// Truncation of the (only) infinite sum in the two-range expansion: the
// outer degree ell1. All inner sums are finite and evaluated exactly.
struct TruncationSpec {
    int ell1_max = 20;
    double rel_tol = 1e-10;
    TruncationMode mode = TruncationMode::adaptive;
};

// Denominator floor for relative errors against a near-zero reference.
inline constexpr double kRelErrorFloor = 1e-300;

struct ConvergenceReport {
    // partial_values[c] is the partial sum through outer degree c.
    std::vector<ComplexValue> partial_values;
    // Direct evaluation at r_small + r_large.
    std::optional<ComplexValue> reference;
    // errors[c] = |partial_values[c] - reference| / max(|reference|, floor).
    std::vector<double> errors;
    // First cutoff preceded by two consecutive shells below
    // rel_tol * |partial sum|; empty when never reached ("not converged").
    std::optional<int> converged_at;
};

// Double-truncated expansion of exp(a.b) over solid-harmonic pairs:
// 2 pi sum_{ell<=L} sum_m conj(YS_ell^m(a)) YS_ell^m(b)
//   sum_{k<=K} (a^2 b^2)^k / (2^{ell+2k} k! (1/2)_{ell+k+1}).
double exp_dot_spherical(const Vector3& a, const Vector3& b, int L, int K);

// Same limit through modified Bessel functions and Legendre polynomials:
// (pi/(2ab))^{1/2} sum_{ell<=L} (2 ell + 1) I_{ell+1/2}(ab) P_ell(cos theta).
// Zero-length input is a domain error.
double exp_dot_legendre(const Vector3& a, const Vector3& b, int L);

// Two-range expansion of B_{n,ell}^m(alpha, r_small + r_large) in B
// functions of r_large, truncated at trunc.ell1_max. Requires a classical
// index and |r_small| < |r_large| (strictly; equal radii are rejected).
// In adaptive mode the outer sum stops after two consecutive shells whose
// contribution falls below rel_tol times the partial sum. Returns the last
// partial sum and the full per-cutoff report; r_small = 0 returns the direct
// value exactly, converged at cutoff 0.
std::pair<ComplexValue, ConvergenceReport> b_addition(const BIndex& idx,
                                                      const Vector3& r_small,
                                                      const Vector3& r_large,
                                                      const TruncationSpec& trunc);

// Independent implementation path for cross-validation: keeps the expansion
// in its pre-resummation form (sum over the derivative order t with weight
// (-1)^t/(2^t t!) and an explicit spherical-tensor-gradient application)
// instead of the q-resummed coefficients. Agrees with b_addition shell by
// shell up to rounding.
ComplexValue b_addition_midform(const BIndex& idx, const Vector3& r_small,
                                const Vector3& r_large, const TruncationSpec& trunc);

struct AdditionGeometry {
    Vector3 r_small;
    Vector3 r_large;
};

struct ConvergenceRow {
    std::size_t geometry;  // index into the input list
    int cutoff;
    ComplexValue value;
    ComplexValue reference;
    double rel_error;
};

// Relative error of the truncated expansion against direct evaluation for
// each geometry and each requested cutoff; rows ordered geometry-major, then
// in the order the cutoffs were given.
std::vector<ConvergenceRow> convergence_table(const BIndex& idx,
                                              const std::vector<AdditionGeometry>& geometries,
                                              const std::vector<int>& cutoffs);

namespace detail {

// sqrt(2/pi) z^{2t} / (2(l1+t)+1)!! 0F1(l1+t+3/2; z^2/4): the radial kernel
// z^{t-l1-1/2} I_{l1+t+1/2}(z) rewritten so that only integer powers of z
// appear and the z -> 0 limit is exact.
double radial_bessel_kernel(int l1, int t, double z);

// b_addition with the innermost binomial sum optionally not clamped to the
// resummation variable q; the extra terms then carry non-classical indices
// and must contribute exactly zero (structural check used by the tests).
std::pair<ComplexValue, ConvergenceReport> b_addition_impl(const BIndex& idx,
                                                           const Vector3& r_small,
                                                           const Vector3& r_large,
                                                           const TruncationSpec& trunc,
                                                           bool clamp_inner_sum);

}  // namespace detail

}  // namespace bfn
