#include "bfn/specfunc.hpp"

#include <mutex>

#include "bfn/combinatorics.hpp"

namespace bfn {

namespace {

std::vector<double> make_theta_coefficients(int n) {
    std::vector<double> c(n + 1);
    for (int j = 0; j <= n; ++j) {
        BigInt num = factorial(2 * n - j);
        BigInt den = factorial(n - j) * factorial(j) * (BigInt(1) << (n - j));
        c[j] = to_double(BigInt(num / den));  // exact division
    }
    return c;
}

constexpr int kThetaCacheMax = 64;

}  // namespace

const std::vector<double>& theta_coefficients(int n) {
    if (n < 0) throw std::domain_error("theta_coefficients: negative degree");
    static std::vector<std::vector<double>> cache(kThetaCacheMax + 1);
    static std::mutex mu;
    if (n > kThetaCacheMax) {
        // Rare; leak one immutable vector per distinct large degree.
        static std::vector<std::vector<double>*> big;
        std::lock_guard<std::mutex> lock(mu);
        for (auto* v : big)
            if ((int)v->size() == n + 1) return *v;
        big.push_back(new std::vector<double>(make_theta_coefficients(n)));
        return *big.back();
    }
    std::lock_guard<std::mutex> lock(mu);
    if (cache[n].empty()) cache[n] = make_theta_coefficients(n);
    return cache[n];
}

double theta_polynomial(int n, double z) {
    if (n < 0) throw std::domain_error("theta_polynomial: negative degree");
    const std::vector<double>& c = theta_coefficients(n);
    double r = c[n];
    for (int j = n - 1; j >= 0; --j) r = r * z + c[j];
    return r;
}

double reduced_bessel(double nu, double z) {
    if (z <= 0.0) throw std::domain_error("reduced_bessel: require z > 0");
    double n_real = nu + 0.5;
    int n = (int)std::llround(n_real);
    if (std::abs(n_real - n) > 1e-12)
        throw std::domain_error("reduced_bessel: order must be half-integer");
    if (n >= 1) return std::exp(-z) * theta_polynomial(n - 1, z);
    // khat_{n-1/2}(z) = z^{2n-1} exp(-z) Theta_{-n}(z) for n <= 0
    return std::pow(z, 2 * n - 1) * std::exp(-z) * theta_polynomial(-n, z);
}

namespace {

double bessel_i_impl(double mu, double z, bool scaled) {
    double l_real = mu - 0.5;
    int ell = (int)std::llround(l_real);
    if (ell < 0 || std::abs(l_real - ell) > 1e-12)
        throw std::domain_error("bessel_i_halfint: order must be ell + 1/2 with ell >= 0");
    if (z < 0.0) throw std::domain_error("bessel_i_halfint: require z >= 0");
    if (z == 0.0) return 0.0;
    // I_mu(z) = (z/2)^mu / Gamma(mu+1) sum_j (z^2/4)^j / (j! (mu+1)_j)
    double x = 0.25 * z * z;
    double term = 1.0, sum = 1.0;
    bool converged = false;
    for (int j = 1; j <= 200; ++j) {
        term *= x / (j * (mu + j));
        sum += term;
        if (term <= 1e-16 * sum) {
            converged = true;
            break;
        }
    }
    if (!converged)
        throw std::runtime_error("bessel_i_halfint: series did not converge");
    // Gamma(ell + 3/2) = (2 ell + 1)!! sqrt(pi) / 2^{ell+1}
    double gamma = double_factorial_d(2 * ell + 1) * std::sqrt(pi) / std::ldexp(1.0, ell + 1);
    if (scaled) return std::exp(mu * std::log(0.5 * z) - z) / gamma * sum;
    return std::pow(0.5 * z, mu) / gamma * sum;
}

}  // namespace

double bessel_i_halfint(double mu, double z) { return bessel_i_impl(mu, z, false); }

double bessel_i_halfint_scaled(double mu, double z) { return bessel_i_impl(mu, z, true); }

double assoc_legendre(int ell, int m, double x) {
    if (ell < 0 || m < 0 || m > ell)
        throw std::domain_error("assoc_legendre: require 0 <= m <= ell");
    if (!(x >= -1.0 && x <= 1.0))
        throw std::domain_error("assoc_legendre: require |x| <= 1");
    double somx2 = std::sqrt((1.0 - x) * (1.0 + x));
    double pmm = 1.0;
    for (int i = 1; i <= m; ++i) pmm *= (2 * i - 1) * somx2;
    if (ell == m) return pmm;
    double pmmp1 = x * (2 * m + 1) * pmm;
    if (ell == m + 1) return pmmp1;
    double p = 0.0;
    for (int k = m + 2; k <= ell; ++k) {
        p = (x * (2 * k - 1) * pmmp1 - (k + m - 1) * pmm) / (k - m);
        pmm = pmmp1;
        pmmp1 = p;
    }
    return p;
}

double legendre_p(int ell, double x) {
    if (ell < 0) throw std::domain_error("legendre_p: negative degree");
    if (ell == 0) return 1.0;
    double p0 = 1.0, p1 = x;
    for (int k = 2; k <= ell; ++k) {
        double p = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
        p0 = p1;
        p1 = p;
    }
    return p1;
}

ComplexValue spherical_harmonic(const TensorIndex& idx, double theta, double phi) {
    validate(idx);
    const int ell = idx.ell, m = idx.m, am = std::abs(m);
    double ratio = 1.0;  // (ell-|m|)! / (ell+|m|)!
    for (int k = ell - am + 1; k <= ell + am; ++k) ratio /= k;
    double norm = std::sqrt((2 * ell + 1) / (4.0 * pi) * ratio);
    double p = assoc_legendre(ell, am, std::cos(theta));
    double phase = (m >= 0) ? minus_one_pow(m) : 1.0;  // i^{m+|m|}
    return phase * norm * p * std::polar(1.0, m * phi);
}

ComplexValue solid_harmonic(const TensorIndex& idx, const Vector3& v) {
    validate(idx);
    const int ell = idx.ell, m = idx.m;
    if (m < 0) {
        ComplexValue val = solid_harmonic({ell, -m}, v);
        return minus_one_pow(m) * std::conj(val);
    }
    // r^ell Y_ell^m(v) = sqrt((2l+1)/(4pi) (l+m)!(l-m)!) *
    //   sum_k u^{m+k} w^k z^{l-m-2k} / (2^{m+2k} (m+k)! k! (l-m-2k)!)
    // with u = -x - iy, w = x - iy.
    const ComplexValue u(-v.x, -v.y), w(v.x, -v.y);
    std::vector<ComplexValue> upow(ell + 1), wpow(ell + 1);
    std::vector<double> zpow(ell + 1);
    upow[0] = wpow[0] = 1.0;
    zpow[0] = 1.0;
    for (int i = 1; i <= ell; ++i) {
        upow[i] = upow[i - 1] * u;
        wpow[i] = wpow[i - 1] * w;
        zpow[i] = zpow[i - 1] * v.z;
    }
    ComplexValue sum = 0.0;
    for (int k = 0; 2 * k <= ell - m; ++k) {
        double denom = std::ldexp(1.0, m + 2 * k) * factorial_d(m + k) *
                       factorial_d(k) * factorial_d(ell - m - 2 * k);
        sum += upow[m + k] * wpow[k] * zpow[ell - m - 2 * k] / denom;
    }
    double pref = std::sqrt((2 * ell + 1) / (4.0 * pi) * factorial_d(ell + m) *
                            factorial_d(ell - m));
    return pref * sum;
}

std::vector<ComplexValue> solid_harmonic_table(const Vector3& v, int ell_max) {
    if (ell_max < 0) throw std::domain_error("solid_harmonic_table: negative ell_max");
    std::vector<ComplexValue> t(lm_flat(ell_max, ell_max) + 1);
    for (int ell = 0; ell <= ell_max; ++ell) {
        for (int m = 0; m <= ell; ++m) {
            ComplexValue val = solid_harmonic({ell, m}, v);
            t[lm_flat(ell, m)] = val;
            if (m > 0) t[lm_flat(ell, -m)] = minus_one_pow(m) * std::conj(val);
        }
    }
    return t;
}

}  // namespace bfn
