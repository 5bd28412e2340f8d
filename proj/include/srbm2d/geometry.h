#pragma once

#include <array>
#include <cmath>
#include <optional>

namespace srbm2d {

/// Point or direction in the plane (theta-space or state space).
struct Vector2 {
  double x1 = 0.0;
  double x2 = 0.0;

  constexpr double operator[](int i) const { return i == 1 ? x1 : x2; }
  constexpr double& at(int i) { return i == 1 ? x1 : x2; }

  friend constexpr Vector2 operator+(Vector2 a, Vector2 b) { return {a.x1 + b.x1, a.x2 + b.x2}; }
  friend constexpr Vector2 operator-(Vector2 a, Vector2 b) { return {a.x1 - b.x1, a.x2 - b.x2}; }
  friend constexpr Vector2 operator-(Vector2 a) { return {-a.x1, -a.x2}; }
  friend constexpr Vector2 operator*(double s, Vector2 a) { return {s * a.x1, s * a.x2}; }
  friend constexpr Vector2 operator*(Vector2 a, double s) { return s * a; }
  friend constexpr bool operator==(Vector2 a, Vector2 b) = default;
};

constexpr double dot(Vector2 a, Vector2 b) { return a.x1 * b.x1 + a.x2 * b.x2; }
// z-component of a x b; positive when b is counterclockwise from a.
constexpr double cross(Vector2 a, Vector2 b) { return a.x1 * b.x2 - a.x2 * b.x1; }
inline double norm(Vector2 a) { return std::hypot(a.x1, a.x2); }
constexpr Vector2 swapped(Vector2 a) { return {a.x2, a.x1}; }
inline bool is_finite(Vector2 a) { return std::isfinite(a.x1) && std::isfinite(a.x2); }

/// Componentwise strict and weak orders used for domain membership.
constexpr bool strictly_less(Vector2 a, Vector2 b) { return a.x1 < b.x1 && a.x2 < b.x2; }
constexpr bool less_equal(Vector2 a, Vector2 b) { return a.x1 <= b.x1 && a.x2 <= b.x2; }

struct Matrix2 {
  double a11 = 0.0;
  double a12 = 0.0;
  double a21 = 0.0;
  double a22 = 0.0;

  static constexpr Matrix2 identity() { return {1.0, 0.0, 0.0, 1.0}; }
  static constexpr Matrix2 diagonal(double d1, double d2) { return {d1, 0.0, 0.0, d2}; }

  constexpr double det() const { return a11 * a22 - a12 * a21; }
  constexpr Matrix2 transpose() const { return {a11, a21, a12, a22}; }
  constexpr Matrix2 diag() const { return {a11, 0.0, 0.0, a22}; }
  /// Column i (1-based).
  constexpr Vector2 col(int i) const { return i == 1 ? Vector2{a11, a21} : Vector2{a12, a22}; }
  constexpr Vector2 row(int i) const { return i == 1 ? Vector2{a11, a12} : Vector2{a21, a22}; }
  /// Relabels both coordinates (P A P with P the exchange matrix).
  constexpr Matrix2 swapped() const { return {a22, a21, a12, a11}; }

  constexpr Matrix2 inverse() const {
    const double d = det();
    return {a22 / d, -a12 / d, -a21 / d, a11 / d};
  }

  double max_abs() const {
    return std::fmax(std::fmax(std::fabs(a11), std::fabs(a12)),
                     std::fmax(std::fabs(a21), std::fabs(a22)));
  }

  friend constexpr Vector2 operator*(const Matrix2& m, Vector2 v) {
    return {m.a11 * v.x1 + m.a12 * v.x2, m.a21 * v.x1 + m.a22 * v.x2};
  }
  friend constexpr Matrix2 operator*(const Matrix2& a, const Matrix2& b) {
    return {a.a11 * b.a11 + a.a12 * b.a21, a.a11 * b.a12 + a.a12 * b.a22,
            a.a21 * b.a11 + a.a22 * b.a21, a.a21 * b.a12 + a.a22 * b.a22};
  }
  friend constexpr Matrix2 operator+(const Matrix2& a, const Matrix2& b) {
    return {a.a11 + b.a11, a.a12 + b.a12, a.a21 + b.a21, a.a22 + b.a22};
  }
  friend constexpr Matrix2 operator-(const Matrix2& a, const Matrix2& b) {
    return {a.a11 - b.a11, a.a12 - b.a12, a.a21 - b.a21, a.a22 - b.a22};
  }
  friend constexpr Matrix2 operator*(double s, const Matrix2& a) {
    return {s * a.a11, s * a.a12, s * a.a21, s * a.a22};
  }
  friend constexpr bool operator==(const Matrix2&, const Matrix2&) = default;
};

inline bool is_finite(const Matrix2& m) {
  return std::isfinite(m.a11) && std::isfinite(m.a12) && std::isfinite(m.a21) &&
         std::isfinite(m.a22);
}

/// Real roots of a t^2 + b t + c = 0 (a != 0), ascending. Uses the
/// cancellation-free pairing: the large-magnitude root first, the other
/// through the product of roots.
std::optional<std::array<double, 2>> quadratic_roots(double a, double b, double c);

/// A quadratic function restricted to the line base + t * dir,
/// written as a t^2 + b t + c.
struct LineQuadratic {
  double a = 0.0;
  double b = 0.0;
  double c = 0.0;

  double operator()(double t) const { return (a * t + b) * t + c; }
};

/// Symmetric 2x2 eigendecomposition: sigma = Q diag(l1, l2) Q^T with Q a
/// rotation by `angle`.
struct SymmetricEigen {
  double l1 = 0.0;
  double l2 = 0.0;
  double angle = 0.0;
};

SymmetricEigen symmetric_eigen(const Matrix2& sym);

}  // namespace srbm2d
