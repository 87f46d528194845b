#pragma once

#include <cmath>
#include <complex>
#include <stdexcept>

// Two-level-system primitives: Bloch vectors, 2x2 complex matrices, Pauli
// algebra, axis-angle rotations and unitary conjugation. Everything is a
// plain value type and immutable after construction.

namespace duality {

using complex = std::complex<double>;

inline constexpr double pi = 3.14159265358979323846;

// Tolerance for structural invariants (unit norms, hermiticity, unitarity,
// trace). ~100x double epsilon, generous for the short pipelines used here.
inline constexpr double invariant_tol = 1e-12;

// ---------------------------------------------------------------------------
// Real 3-vectors
// ---------------------------------------------------------------------------

struct Vec3 {
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;
};

inline Vec3 operator+(const Vec3& a, const Vec3& b) { return {a.x + b.x, a.y + b.y, a.z + b.z}; }
inline Vec3 operator-(const Vec3& a, const Vec3& b) { return {a.x - b.x, a.y - b.y, a.z - b.z}; }
inline Vec3 operator*(double k, const Vec3& v) { return {k * v.x, k * v.y, k * v.z}; }

inline double dot(const Vec3& a, const Vec3& b) { return a.x * b.x + a.y * b.y + a.z * b.z; }

inline Vec3 cross(const Vec3& a, const Vec3& b) {
    return {a.y * b.z - a.z * b.y,
            a.z * b.x - a.x * b.z,
            a.x * b.y - a.y * b.x};
}

inline double norm(const Vec3& v) { return std::sqrt(dot(v, v)); }

// Bloch vector s of a qubit state rho = (1 + s.sigma)/2. The origin is the
// totally depolarized state; pure states lie on the unit sphere.
using BlochVector = Vec3;

// A vector is accepted as a state when it fits inside the Bloch ball.
inline bool is_valid_state(const BlochVector& s, double tol = invariant_tol) {
    return norm(s) <= 1.0 + tol;
}

// Unit-norm direction used for rotation axes. Construction enforces the norm
// so the rotation formulas downstream can rely on it.
class UnitAxis {
public:
    UnitAxis(double x, double y, double z) : v_{x, y, z} {
        if (std::abs(norm(v_) - 1.0) > invariant_tol) {
            throw std::invalid_argument("UnitAxis: vector must have unit norm");
        }
    }

    explicit UnitAxis(const Vec3& v) : UnitAxis(v.x, v.y, v.z) {}

    // Rescales an arbitrary nonzero vector onto the unit sphere.
    static UnitAxis normalized(const Vec3& v) {
        const double n = norm(v);
        if (n < 1e-15) {
            throw std::invalid_argument("UnitAxis: cannot normalize a zero vector");
        }
        return UnitAxis((1.0 / n) * v);
    }

    const Vec3& vec() const { return v_; }
    double x() const { return v_.x; }
    double y() const { return v_.y; }
    double z() const { return v_.z; }

    static UnitAxis ex() { return {1.0, 0.0, 0.0}; }
    static UnitAxis ey() { return {0.0, 1.0, 0.0}; }
    static UnitAxis ez() { return {0.0, 0.0, 1.0}; }

private:
    Vec3 v_;
};

// ---------------------------------------------------------------------------
// 2x2 complex matrices
// ---------------------------------------------------------------------------

struct Mat2 {
    complex m00{}, m01{};
    complex m10{}, m11{};

    static Mat2 identity() { return {1.0, 0.0, 0.0, 1.0}; }

    Mat2 adjoint() const {
        return {std::conj(m00), std::conj(m10),
                std::conj(m01), std::conj(m11)};
    }

    complex trace() const { return m00 + m11; }
    complex det() const { return m00 * m11 - m01 * m10; }
};

inline Mat2 operator*(const Mat2& a, const Mat2& b) {
    return {a.m00 * b.m00 + a.m01 * b.m10, a.m00 * b.m01 + a.m01 * b.m11,
            a.m10 * b.m00 + a.m11 * b.m10, a.m10 * b.m01 + a.m11 * b.m11};
}

inline Mat2 operator*(const complex& k, const Mat2& m) {
    return {k * m.m00, k * m.m01, k * m.m10, k * m.m11};
}

inline Mat2 operator+(const Mat2& a, const Mat2& b) {
    return {a.m00 + b.m00, a.m01 + b.m01, a.m10 + b.m10, a.m11 + b.m11};
}

inline Mat2 operator-(const Mat2& a, const Mat2& b) {
    return {a.m00 - b.m00, a.m01 - b.m01, a.m10 - b.m10, a.m11 - b.m11};
}

// Largest entrywise distance; the metric used by all matrix tolerances.
inline double max_abs_diff(const Mat2& a, const Mat2& b) {
    double d = std::abs(a.m00 - b.m00);
    d = std::max(d, std::abs(a.m01 - b.m01));
    d = std::max(d, std::abs(a.m10 - b.m10));
    d = std::max(d, std::abs(a.m11 - b.m11));
    return d;
}

inline const Mat2 sigma_x{0.0, 1.0, 1.0, 0.0};
inline const Mat2 sigma_y{0.0, complex(0.0, -1.0), complex(0.0, 1.0), 0.0};
inline const Mat2 sigma_z{1.0, 0.0, 0.0, -1.0};

// v . sigma
inline Mat2 pauli_dot(const Vec3& v) {
    return {complex(v.z, 0.0),  complex(v.x, -v.y),
            complex(v.x, v.y),  complex(-v.z, 0.0)};
}

using DensityMatrix = Mat2;
using Unitary2 = Mat2;

inline bool is_unitary(const Mat2& u, double tol = invariant_tol) {
    return max_abs_diff(u * u.adjoint(), Mat2::identity()) <= tol;
}

inline bool is_hermitian(const Mat2& m, double tol = invariant_tol) {
    return max_abs_diff(m, m.adjoint()) <= tol;
}

// Eigenvalues of a Hermitian 2x2 matrix, smallest first.
inline std::pair<double, double> hermitian_eigenvalues(const Mat2& m) {
    const double t = m.trace().real();
    const double d = m.det().real();
    const double disc = std::sqrt(std::max(0.0, t * t / 4.0 - d));
    return {t / 2.0 - disc, t / 2.0 + disc};
}

// Hermitian, unit trace, positive semidefinite (within tolerance).
inline bool is_density_matrix(const Mat2& rho, double tol = invariant_tol) {
    if (!is_hermitian(rho, tol)) return false;
    if (std::abs(rho.trace().real() - 1.0) > tol) return false;
    if (std::abs(rho.trace().imag()) > tol) return false;
    return hermitian_eigenvalues(rho).first >= -tol;
}

// ---------------------------------------------------------------------------
// Operations
// ---------------------------------------------------------------------------

// rho = (1 + s.sigma)/2
inline DensityMatrix bloch_to_density(const BlochVector& s) {
    if (!is_valid_state(s)) {
        throw std::invalid_argument("bloch_to_density: |s| > 1, not a physical state");
    }
    return {complex((1.0 + s.z) / 2.0, 0.0), complex(s.x / 2.0, -s.y / 2.0),
            complex(s.x / 2.0, s.y / 2.0),   complex((1.0 - s.z) / 2.0, 0.0)};
}

// Inverse of bloch_to_density; components are trace(rho sigma_k).
inline BlochVector density_to_bloch(const DensityMatrix& rho) {
    if (!is_hermitian(rho)) {
        throw std::invalid_argument("density_to_bloch: matrix is not Hermitian");
    }
    if (std::abs(rho.trace().real() - 1.0) > invariant_tol ||
        std::abs(rho.trace().imag()) > invariant_tol) {
        throw std::invalid_argument("density_to_bloch: trace is not 1");
    }
    return {2.0 * rho.m10.real(),
            2.0 * rho.m10.imag(),
            rho.m00.real() - rho.m11.real()};
}

// e^{-i axis.sigma angle/2} = cos(angle/2) 1 - i sin(angle/2) (axis.sigma)
inline Unitary2 rotation_unitary(const UnitAxis& axis, double angle) {
    const double c = std::cos(angle / 2.0);
    const double s = std::sin(angle / 2.0);
    const Vec3& n = axis.vec();
    return {complex(c, -s * n.z),        complex(-s * n.y, -s * n.x),
            complex(s * n.y, -s * n.x),  complex(c, s * n.z)};
}

// Rodrigues rotation of a Bloch vector: matches conjugation by
// rotation_unitary(axis, angle) on the density-matrix side.
inline BlochVector rotate_bloch(const UnitAxis& axis, double angle, const BlochVector& s) {
    const double c = std::cos(angle);
    const double si = std::sin(angle);
    const Vec3& n = axis.vec();
    return c * s + si * cross(n, s) + ((1.0 - c) * dot(n, s)) * n;
}

// U rho U^dagger
inline DensityMatrix conjugate_state(const Unitary2& u, const DensityMatrix& rho) {
    return u * rho * u.adjoint();
}

} // namespace duality
