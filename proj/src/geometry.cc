#include "srbm2d/geometry.h"

#include <utility>

namespace srbm2d {

std::optional<std::array<double, 2>> quadratic_roots(double a, double b, double c) {
  const double disc = b * b - 4.0 * a * c;
  if (disc < 0.0 || a == 0.0) return std::nullopt;
  const double q = -0.5 * (b + std::copysign(std::sqrt(disc), b));
  double r1 = q / a;
  double r2 = q != 0.0 ? c / q : r1;
  if (r1 > r2) std::swap(r1, r2);
  return std::array<double, 2>{r1, r2};
}

SymmetricEigen symmetric_eigen(const Matrix2& sym) {
  const double mean = 0.5 * (sym.a11 + sym.a22);
  const double half_diff = 0.5 * (sym.a11 - sym.a22);
  const double off = sym.a12;
  const double rad = std::hypot(half_diff, off);
  SymmetricEigen e;
  e.l1 = mean + rad;
  e.l2 = mean - rad;
  e.angle = 0.5 * std::atan2(2.0 * off, sym.a11 - sym.a22);
  return e;
}

}  // namespace srbm2d
