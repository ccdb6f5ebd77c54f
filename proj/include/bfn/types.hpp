#pragma once

#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>

namespace bfn {

using ComplexValue = std::complex<double>;

inline constexpr double pi = std::numbers::pi;

struct Vector3 {
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;

    double norm2() const { return x * x + y * y + z * z; }
    double norm() const { return std::sqrt(norm2()); }
};

inline Vector3 operator+(const Vector3& a, const Vector3& b) {
    return {a.x + b.x, a.y + b.y, a.z + b.z};
}
inline Vector3 operator-(const Vector3& a, const Vector3& b) {
    return {a.x - b.x, a.y - b.y, a.z - b.z};
}
inline Vector3 operator*(double s, const Vector3& v) {
    return {s * v.x, s * v.y, s * v.z};
}
inline double dot(const Vector3& a, const Vector3& b) {
    return a.x * b.x + a.y * b.y + a.z * b.z;
}

// theta in [0, pi], phi in [0, 2*pi). Points on the polar axis (and the
// origin) use the convention phi = 0; the origin additionally has theta = 0.
struct SphericalCoords {
    double r = 0.0;
    double theta = 0.0;
    double phi = 0.0;
};

inline SphericalCoords to_spherical(const Vector3& v) {
    SphericalCoords s;
    s.r = v.norm();
    if (s.r == 0.0) return s;
    double c = v.z / s.r;
    if (c > 1.0) c = 1.0;
    if (c < -1.0) c = -1.0;
    s.theta = std::acos(c);
    if (v.x == 0.0 && v.y == 0.0) return s;
    s.phi = std::atan2(v.y, v.x);
    if (s.phi < 0.0) s.phi += 2.0 * pi;
    if (s.phi == 0.0) s.phi = 0.0;  // normalize -0.0
    return s;
}

inline Vector3 from_spherical(const SphericalCoords& s) {
    double st = std::sin(s.theta);
    return {s.r * st * std::cos(s.phi), s.r * st * std::sin(s.phi),
            s.r * std::cos(s.theta)};
}

// Angular index pair (ell, m) of a surface or solid harmonic.
struct TensorIndex {
    int ell = 0;
    int m = 0;
};

inline void validate(const TensorIndex& t) {
    if (t.ell < 0 || std::abs(t.m) > t.ell)
        throw std::domain_error("TensorIndex: require ell >= 0 and |m| <= ell");
}

}  // namespace bfn
