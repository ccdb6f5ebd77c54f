#pragma once

#include <vector>

#include "bfn/types.hpp"

namespace bfn {

// Bessel polynomial Theta_n, the polynomial factor of the reduced Bessel
// function at half-integer order: khat_{n+1/2}(z) = exp(-z) Theta_n(z),
// Theta_n(z) = sum_{j=0}^{n} (2n-j)! / ((n-j)! j! 2^{n-j}) z^j.
double theta_polynomial(int n, double z);

// Coefficients of Theta_n in ascending powers of z (exact integers, rounded
// to double). The returned reference stays valid for the process lifetime.
const std::vector<double>& theta_coefficients(int n);

// Reduced Bessel function khat_nu(z) = (2/pi)^{1/2} z^nu K_nu(z) for
// half-integer nu and z > 0. Uses the polynomial form for nu = n - 1/2 with
// n >= 1 and the reflection khat_{-nu}(z) = z^{-2 nu} khat_nu(z) otherwise.
double reduced_bessel(double nu, double z);

// Modified Bessel function I_mu(z) of half-integer order mu = ell + 1/2,
// ell >= 0, z >= 0, evaluated by the ascending series. Throws a runtime
// error if the series fails to converge within its term budget.
double bessel_i_halfint(double mu, double z);

// exp(-z) I_mu(z); same domain, safe for large z.
double bessel_i_halfint_scaled(double mu, double z);

// Ferrers associated Legendre function P_ell^m(x) for 0 <= m <= ell and
// |x| <= 1, without the Condon-Shortley phase.
double assoc_legendre(int ell, int m, double x);

// Legendre polynomial P_ell(x).
double legendre_p(int ell, double x);

// Surface spherical harmonic Y_ell^m(theta, phi) with the Condon-Shortley
// phase carried as i^{m+|m|} in front of the unsigned Ferrers function.
ComplexValue spherical_harmonic(const TensorIndex& idx, double theta, double phi);

// Solid harmonic r^ell Y_ell^m evaluated as a homogeneous polynomial in the
// Cartesian components of v; m < 0 via Y_ell^{-|m|} = (-1)^{|m|} conj(Y_ell^{|m|}).
ComplexValue solid_harmonic(const TensorIndex& idx, const Vector3& v);

// All solid harmonics with ell <= ell_max at one point; the entry for (ell, m)
// sits at index lm_flat(ell, m).
std::vector<ComplexValue> solid_harmonic_table(const Vector3& v, int ell_max);

inline int lm_flat(int ell, int m) { return ell * (ell + 1) + m; }

}  // namespace bfn
