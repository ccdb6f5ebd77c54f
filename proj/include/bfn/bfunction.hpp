#pragma once

#include <vector>

#include "bfn/types.hpp"

namespace bfn {

// Index of a B function B_{n,ell}^m(alpha, r): order n (any integer), degree
// ell >= 0, magnetic number |m| <= ell, positive scale alpha. Indices with
// n + ell < 0 are distributional ("non-classical"): as ordinary functions
// they vanish everywhere except the origin, where they are undefined.
struct BIndex {
    int n;
    int ell;
    int m;
    double alpha;

    bool classical() const { return n + ell >= 0; }
};

struct BTerm {
    ComplexValue coeff;
    int n;
    int ell;
    int m;
};

// Finite linear combination of B functions sharing one scale. Kept in
// normalized form: like indices merged, coefficients below 1e-300 dropped,
// terms ordered lexicographically by (ell, m, -n).
struct BExpansion {
    double alpha = 1.0;
    std::vector<BTerm> terms;
};

void normalize(BExpansion& e);

// B_{n,ell}^m(alpha, r) = [2^{n+ell} (n+ell)!]^{-1} khat_{n-1/2}(alpha r)
// times the solid harmonic of alpha*r. Non-classical indices give exactly 0
// for r != 0 and a domain error at r = 0. Classical indices at r = 0 use the
// analytic limit: finite and nonzero only for ell = 0 with n >= 1.
ComplexValue b_eval(const BIndex& idx, const Vector3& r);

// Fourier transform (2 pi)^{-3/2} integral of exp(-i p.r) B(r): equals
// (2/pi)^{1/2} alpha^{2n+ell-1} / (alpha^2 + p^2)^{n+ell+1} times the solid
// harmonic of -i p, the latter evaluated as (-i)^ell times the real solid
// harmonic by homogeneity. Classical indices only.
ComplexValue b_fourier(const BIndex& idx, const Vector3& p);

// The operator (1 - laplacian/alpha^2) lowers every order index by one.
BExpansion ladder_down(const BExpansion& e);

// (laplacian/alpha^2)^nu B_{n,ell}^m = sum_{t<=nu} (-1)^t C(nu,t) B_{n-t,ell}^m.
BExpansion laplacian_power(int nu, const BIndex& idx);

// Action of the spherical tensor gradient operator, the solid harmonic of
// the gradient: Y_{ell1}^{m1}(grad) B_{n2,ell2}^{m2} expands into a finite
// Gaunt-coupled combination of B functions of orders n2 + ell2 - ell - t.
BExpansion stgo_on_b(const TensorIndex& op, const BIndex& idx);

// Every classical B function is a spherical tensor gradient acting on a
// scalar one: B_{n,ell}^m = prefactor * Y_ell^m(grad) B_{n+ell,0}^0 with
// prefactor (4 pi)^{1/2} / (-alpha)^ell.
struct ScalarReduction {
    double prefactor;
    TensorIndex op;
    BIndex scalar;
};
ScalarReduction scalar_reduction(const BIndex& idx);

// Sum of coeff * b_eval(term, r) over the expansion.
ComplexValue expansion_eval(const BExpansion& e, const Vector3& r);

}  // namespace bfn
