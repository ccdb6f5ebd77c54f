#pragma once

#include "bfn/bfunction.hpp"

namespace bfn {

enum class RadialBasisKind { slater, hydrogenic, lambda, sturmian };

// Exponentially decaying basis function with principal index n >= ell + 1.
// scale is the exponential parameter: alpha for slater/lambda/sturmian, the
// nuclear charge Z for hydrogenic (whose exponential scale is Z/n).
struct RadialBasisSpec {
    RadialBasisKind kind;
    int n;
    int ell;
    int m;
    double scale;
};

// Generalized Laguerre polynomial L_degree^{(a)}(x) by upward recurrence.
double laguerre(int degree, double a, double x);

// Pointwise value of the basis function:
//   slater      (alpha r)^{n-1} e^{-alpha r} Y_ell^m(theta, phi)
//   hydrogenic  (2Z/n)^{3/2} [ (n-ell-1)! / (2n (n+ell)!) ]^{1/2}
//               e^{-Zr/n} L_{n-ell-1}^{(2ell+1)}(2Zr/n) YS_ell^m((2Z/n) r)
//   lambda      (2a)^{3/2} [ (n-ell-1)! / (n+ell+1)! ]^{1/2}
//               e^{-ar} L_{n-ell-1}^{(2ell+2)}(2ar) YS_ell^m(2a r)
//   sturmian    (2a)^{3/2} [ (n-ell-1)! / (2n (n+ell)!) ]^{1/2}
//               e^{-ar} L_{n-ell-1}^{(2ell+1)}(2ar) YS_ell^m(2a r)
// where YS is the solid harmonic. The normalization exponents make the
// hydrogenic and lambda sets L2-orthonormal (verified by quadrature);
// sturmians share the hydrogenic constant with a free scale, so
// sturmian(n,ell,m,Z/n) equals hydrogenic(n,ell,m,Z) pointwise.
ComplexValue eval_direct(const RadialBasisSpec& spec, const Vector3& r);

// Exact finite conversions into B-function form. The expansion scale is
// alpha for slater/lambda/sturmian and Z/n for hydrogenic. Each conversion
// requires the matching kind and throws a domain error otherwise.
BExpansion sto_to_b(const RadialBasisSpec& spec);
BExpansion hydrogenic_to_b(const RadialBasisSpec& spec);
BExpansion lambda_to_b(const RadialBasisSpec& spec);
BExpansion sturmian_to_b(const RadialBasisSpec& spec);

// Dispatch on spec.kind.
BExpansion to_b_expansion(const RadialBasisSpec& spec);

}  // namespace bfn
