#pragma once

#include <array>
#include <cmath>
#include <limits>
#include <stdexcept>

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_int.hpp>

namespace bfn {

using BigInt = boost::multiprecision::cpp_int;
using BigRational = boost::multiprecision::cpp_rational;

inline double to_double(const BigInt& v) { return v.convert_to<double>(); }

// Exact rational to double through a wide float, so ratios of huge factorial
// products convert correctly even when numerator and denominator overflow
// double on their own.
inline double to_double(const BigRational& v) {
    using Wide = boost::multiprecision::cpp_bin_float_50;
    Wide num(boost::multiprecision::numerator(v));
    Wide den(boost::multiprecision::denominator(v));
    return (num / den).convert_to<double>();
}

// n! as an exact integer.
inline BigInt factorial(int n) {
    if (n < 0) throw std::domain_error("factorial: negative argument");
    BigInt r = 1;
    for (int i = 2; i <= n; ++i) r *= i;
    return r;
}

// n!! as an exact integer, with (-1)!! = 0!! = 1.
inline BigInt double_factorial(int n) {
    if (n < -1) throw std::domain_error("double_factorial: argument below -1");
    BigInt r = 1;
    for (int i = n; i > 1; i -= 2) r *= i;
    return r;
}

// Binomial coefficient; zero for k outside [0, n].
inline BigInt binomial(int n, int k) {
    if (n < 0) throw std::domain_error("binomial: negative row");
    if (k < 0 || k > n) return 0;
    if (k > n - k) k = n - k;
    BigInt r = 1;
    for (int i = 0; i < k; ++i) {
        r *= n - i;
        r /= i + 1;  // exact at every step
    }
    return r;
}

// Rising factorial (a)_k = a (a+1) ... (a+k-1).
inline double pochhammer(double a, int k) {
    if (k < 0) throw std::domain_error("pochhammer: negative order");
    double r = 1.0;
    for (int i = 0; i < k; ++i) r *= a + i;
    return r;
}

namespace detail {
inline const std::array<double, 171>& factorial_table() {
    static const std::array<double, 171> t = [] {
        std::array<double, 171> a{};
        a[0] = 1.0;
        for (int i = 1; i <= 170; ++i) a[i] = a[i - 1] * i;
        return a;
    }();
    return t;
}
}  // namespace detail

// n! in double precision; +inf past the double range (n > 170).
inline double factorial_d(int n) {
    if (n < 0) throw std::domain_error("factorial_d: negative argument");
    if (n <= 170) return detail::factorial_table()[n];
    return std::numeric_limits<double>::infinity();
}

// 1/n! with the convention 1/n! = 0 for negative integer n.
inline double reciprocal_factorial(int n) {
    if (n < 0) return 0.0;
    if (n <= 170) return 1.0 / detail::factorial_table()[n];
    return std::exp(-std::lgamma(n + 1.0));
}

// n!! in double precision; (-1)!! = 0!! = 1.
inline double double_factorial_d(int n) {
    if (n < -1) throw std::domain_error("double_factorial_d: argument below -1");
    double r = 1.0;
    for (int i = n; i > 1; i -= 2) r *= i;
    return r;
}

inline double binomial_d(int n, int k) { return to_double(binomial(n, k)); }

inline double minus_one_pow(int k) { return (k % 2 == 0) ? 1.0 : -1.0; }

}  // namespace bfn
