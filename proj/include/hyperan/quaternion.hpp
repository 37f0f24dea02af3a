// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cmath>
#include <complex>
#include <stdexcept>

namespace hyperan {

/// Hamilton quaternion q = w + x*i + y*j + z*k over double.
///
/// Multiplication follows i*j = k, j*k = i, k*i = j (and is not
/// commutative). All functions here are value-semantics and allocation-free.
struct Quaternion {
    double w = 0.0;
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;

    constexpr Quaternion() = default;
    constexpr Quaternion(double w_, double x_, double y_, double z_)
        : w(w_), x(x_), y(y_), z(z_) {}

    static constexpr Quaternion identity() { return {1.0, 0.0, 0.0, 0.0}; }
    static constexpr Quaternion zero() { return {}; }

    constexpr Quaternion operator+(const Quaternion& r) const {
        return {w + r.w, x + r.x, y + r.y, z + r.z};
    }
    constexpr Quaternion operator-(const Quaternion& r) const {
        return {w - r.w, x - r.x, y - r.y, z - r.z};
    }
    constexpr Quaternion operator-() const { return {-w, -x, -y, -z}; }

    /// Hamilton product.
    constexpr Quaternion operator*(const Quaternion& r) const {
        return {w * r.w - x * r.x - y * r.y - z * r.z,
                w * r.x + x * r.w + y * r.z - z * r.y,
                w * r.y - x * r.z + y * r.w + z * r.x,
                w * r.z + x * r.y - y * r.x + z * r.w};
    }

    constexpr Quaternion operator*(double s) const { return {w * s, x * s, y * s, z * s}; }
    constexpr Quaternion operator/(double s) const { return {w / s, x / s, y / s, z / s}; }

    constexpr Quaternion& operator+=(const Quaternion& r) { return *this = *this + r; }
    constexpr Quaternion& operator-=(const Quaternion& r) { return *this = *this - r; }
    constexpr Quaternion& operator*=(const Quaternion& r) { return *this = *this * r; }
    constexpr Quaternion& operator*=(double s) { return *this = *this * s; }

    constexpr Quaternion conj() const { return {w, -x, -y, -z}; }

    /// Squared modulus w^2 + x^2 + y^2 + z^2.
    constexpr double norm() const { return w * w + x * x + y * y + z * z; }

    double modulus() const { return std::sqrt(norm()); }
};

constexpr Quaternion operator*(double s, const Quaternion& q) { return q * s; }

enum class Axis { i, j, k };

/// Anti-involution about one imaginary axis: -mu * q * mu.
/// Negates the two imaginary components orthogonal to the axis.
constexpr Quaternion involution(const Quaternion& q, Axis axis) {
    switch (axis) {
        case Axis::i: return {q.w, q.x, -q.y, -q.z};
        case Axis::j: return {q.w, -q.x, q.y, -q.z};
        case Axis::k: return {q.w, -q.x, -q.y, q.z};
    }
    throw std::invalid_argument("involution: invalid axis");
}

/// Multiplicative inverse conj(q)/norm(q). Throws std::domain_error on zero.
inline Quaternion inverse(const Quaternion& q) {
    const double n = q.norm();
    if (n == 0.0) throw std::domain_error("inverse: zero quaternion has no inverse");
    return q.conj() / n;
}

/// exp((c + d*i) * j) = exp(c*j + d*k).
///
/// The exponent is a pure quaternion p with |p| = hypot(c, d):
///   exp(p) = cos|p| + (p/|p|) sin|p|,  with the limit 1 at |p| = 0.
/// Always unit modulus.
inline Quaternion exp_degenerate(double c, double d) {
    const double m = std::hypot(c, d);
    if (m == 0.0) return Quaternion::identity();
    const double s = std::sin(m) / m;
    return {std::cos(m), 0.0, c * s, d * s};
}

/// Cayley-Dickson split q = z1 + z2 * j with z1, z2 complex in the i-plane:
/// z1 = w + x*i, z2 = y + z*i.
struct CayleyDickson {
    std::complex<double> z1;
    std::complex<double> z2;
};

constexpr CayleyDickson to_cayley_dickson(const Quaternion& q) {
    return {{q.w, q.x}, {q.y, q.z}};
}

constexpr Quaternion from_cayley_dickson(const CayleyDickson& cd) {
    return {cd.z1.real(), cd.z1.imag(), cd.z2.real(), cd.z2.imag()};
}

/// Polar Cayley-Dickson form q = A * exp(B * j) with complex modulus A and
/// complex phase B, both in the i-plane.
struct PolarCD {
    std::complex<double> modulus;  ///< A
    std::complex<double> phase;    ///< B, |B| in [0, pi/2) for extracted forms
};

inline Quaternion from_polar_cd(const PolarCD& p) {
    const Quaternion a{p.modulus.real(), p.modulus.imag(), 0.0, 0.0};
    return a * exp_degenerate(p.phase.real(), p.phase.imag());
}

/// Extract the unique polar Cayley-Dickson pair with |B| in [0, pi/2).
///
/// Writing q = z1 + z2*j, we have z1 = A cos|B| and z2 = A*B sin|B|/|B|,
/// so |B| = atan2(|z2|, |z1|), A = z1/cos|B|, and the direction of B is the
/// direction of z2/A. The branch keeps cos|B| > 0; at q0 = q1 = 0 the pair
/// is not unique (|B| = pi/2), which is reported as a domain error.
inline PolarCD to_polar_cd(const Quaternion& q) {
    const CayleyDickson cd = to_cayley_dickson(q);
    const double n1 = std::abs(cd.z1);
    const double n2 = std::abs(cd.z2);
    if (n1 == 0.0)
        throw std::domain_error(
            "to_polar_cd: q0 = q1 = 0 is degenerate (|B| = pi/2 branch, no unique pair)");
    const double m = std::hypot(n1, n2);          // |q|
    const double babs = std::atan2(n2, n1);       // |B| in [0, pi/2)
    const std::complex<double> a = cd.z1 * (m / n1);  // z1 / cos|B|
    std::complex<double> b{0.0, 0.0};
    if (n2 > 0.0) {
        const std::complex<double> dir = cd.z2 / a;   // modulus sin|B|
        b = dir * (babs / std::abs(dir));
    }
    return {a, b};
}

}  // namespace hyperan
