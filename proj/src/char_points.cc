#include "srbm2d/char_points.h"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "srbm2d/errors.h"

namespace srbm2d {
namespace {

Vector2 theta_r_1(const Srbm& s) {
  const Vector2 p = s.p_vec(1);
  return (-2.0 * dot(s.mu(), p) / dot(p, s.sigma() * p)) * p;
}

// Lagrange system for argmax theta_1: second row of sigma theta + mu is
// zero, which pins theta_2 as an affine function of theta_1.
Vector2 theta_max_1(const Srbm& s) {
  const Matrix2& sg = s.sigma();
  const Vector2 base{0.0, -s.mu().x2 / sg.a22};
  const Vector2 dir{1.0, -sg.a21 / sg.a22};
  const LineQuadratic q = s.restrict_gamma(base, dir);
  const auto roots = quadratic_roots(q.a, q.b, q.c);
  if (!roots) throw Error(ErrorCode::kNoSolution, "ellipse has no rightmost point");
  return base + (*roots)[1] * dir;
}

bool close_points(Vector2 a, Vector2 b, double tol) {
  return norm(a - b) <= tol * (1.0 + norm(b));
}

Vector2 theta_r_tilde_1(const Srbm& s, double tol) {
  const Vector2 tr = theta_r_1(s);
  const Vector2 tm = theta_max_1(s);
  if (close_points(tr, tm, tol)) return tm;
  const LineQuadratic q = s.restrict_gamma({tr.x1, 0.0}, {0.0, 1.0});
  // Roots are tr.x2 and the wanted coordinate; their sum is -b/a.
  return {tr.x1, -q.b / q.a - tr.x2};
}

}  // namespace

Vector2 theta_r(const Srbm& srbm, int i) {
  check_index(i);
  return i == 1 ? theta_r_1(srbm) : swapped(theta_r_1(srbm.swapped()));
}

Vector2 theta_max(const Srbm& srbm, int i) {
  check_index(i);
  return i == 1 ? theta_max_1(srbm) : swapped(theta_max_1(srbm.swapped()));
}

Vector2 theta_r_tilde(const Srbm& srbm, int i, double tol) {
  check_index(i);
  return i == 1 ? theta_r_tilde_1(srbm, tol) : swapped(theta_r_tilde_1(srbm.swapped(), tol));
}

bool theta_max_in_boundary_i(const Srbm& srbm, int i) {
  check_index(i);
  return srbm.gamma_i(3 - i, theta_max(srbm, i)) <= 0.0;
}

Vector2 theta_gamma(const Srbm& srbm, int i) {
  return theta_max_in_boundary_i(srbm, i) ? theta_max(srbm, i) : theta_r(srbm, i);
}

CharPoints char_points(const Srbm& srbm, double tol) {
  CharPoints cp;
  for (int i = 1; i <= 2; ++i) {
    cp.theta_r[i - 1] = theta_r(srbm, i);
    cp.theta_max[i - 1] = theta_max(srbm, i);
    cp.theta_r_tilde[i - 1] = theta_r_tilde(srbm, i, tol);
    cp.theta_gamma[i - 1] = theta_gamma(srbm, i);
  }
  return cp;
}

Vector2 ellipse_center(const Srbm& srbm) { return -(srbm.sigma_inv() * srbm.mu()); }

std::vector<Vector2> ellipse_samples(const Srbm& srbm, int n) {
  if (n < 8) throw std::invalid_argument("ellipse_samples needs n >= 8");
  const Vector2 c = ellipse_center(srbm);
  // gamma(theta) = (<c, sigma c> - <theta - c, sigma (theta - c)>) / 2
  const double rho = std::sqrt(dot(c, srbm.sigma() * c));
  const SymmetricEigen e = symmetric_eigen(srbm.sigma());
  const double ca = std::cos(e.angle);
  const double sa = std::sin(e.angle);
  const double s1 = rho / std::sqrt(e.l1);
  const double s2 = rho / std::sqrt(e.l2);
  std::vector<Vector2> out;
  out.reserve(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) {
    const double phi = 2.0 * std::numbers::pi * k / n;
    const double u1 = s1 * std::cos(phi);
    const double u2 = s2 * std::sin(phi);
    out.push_back({c.x1 + ca * u1 - sa * u2, c.x2 + sa * u1 + ca * u2});
  }
  return out;
}

}  // namespace srbm2d
