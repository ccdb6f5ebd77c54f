#pragma once

#include <cstddef>
#include <functional>
#include <string>
#include <vector>

#include "bfn/types.hpp"

namespace bfn {

// Key of the Gaunt coefficient <ell3 m3 | ell2 m2 | ell1 m1>, the integral of
// conj(Y_{ell3}^{m3}) Y_{ell2}^{m2} Y_{ell1}^{m1} over the unit sphere.
struct GauntKey {
    int ell1, m1, ell2, m2, ell3, m3;
    bool operator==(const GauntKey&) const = default;
};

// Degrees ell3 with nonzero Gaunt coefficients for fixed kets; the range is
// traversed as ell_min, ell_min + step, ..., ell_max with step = 2.
struct CouplingRange {
    int ell_min;
    int ell_max;
    int step = 2;
};

// Half-sums of a parity-conforming degree triple.
struct DeltaQuantities {
    int d_ell;    // (ell1 + ell2 - ell) / 2
    int d_ell1;   // (ell - ell1 + ell2) / 2
    int d_ell2;   // (ell + ell1 - ell2) / 2
    int sigma;    // (ell1 + ell2 + ell) / 2
};

// Wigner 3jm symbol for integer angular momenta. Exact rational arithmetic
// under the final square root; selection-rule failures return exactly 0.
double wigner_3jm(int j1, int j2, int j3, int m1, int m2, int m3);

// Gaunt coefficient (see GauntKey). Values are memoized process-wide; the
// cache is safe for concurrent readers and writers.
double gaunt(const GauntKey& key);

CouplingRange coupling_range(int ell1, int m1, int ell2, int m2);

// Requires the triangle condition and even ell1 + ell2 + ell.
DeltaQuantities delta_quantities(int ell1, int ell2, int ell);

// Integral of f(theta, phi) over the unit sphere: Gauss-Legendre in
// cos(theta) crossed with a uniform trapezoid rule in phi.
ComplexValue sphere_quadrature(const std::function<ComplexValue(double, double)>& f,
                               int n_theta = 64, int n_phi = 128);

// Gauss-Legendre nodes (ascending) and weights on [-1, 1].
void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights);

// Control of the process-wide Gaunt cache and its binary snapshot format
// (magic "BFGT", u32 version, u64 count, then per entry six i32 key fields
// and one f64 value, all little-endian).
namespace gaunt_cache {

std::size_t size();
void clear();

// Writes the whole cache; returns false if the file cannot be created.
bool save(const std::string& path);

// Loads a snapshot into the cache, returning the number of entries read.
// A missing file loads nothing; a malformed one throws a runtime error.
std::size_t load(const std::string& path);

// Overwrites one cached value, bypassing computation. Test hook for
// negative controls; never use for real data.
void inject_for_testing(const GauntKey& key, double value);

}  // namespace gaunt_cache

}  // namespace bfn
