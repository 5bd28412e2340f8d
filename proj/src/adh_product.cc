#include "srbm2d/adh_product.h"

#include <algorithm>
#include <cmath>

#include "srbm2d/char_points.h"
#include "srbm2d/errors.h"

namespace srbm2d {

namespace {

// For face F_i: e^i runs along the face, n^i is its inward normal.
Vector2 e_basis(int i) { return i == 2 ? Vector2{1.0, 0.0} : Vector2{0.0, 1.0}; }
Vector2 n_basis(int i) { return i == 2 ? Vector2{0.0, 1.0} : Vector2{1.0, 0.0}; }

}  // namespace

Vector2 exit_velocity(const Srbm& s, int i) {
  check_index(i);
  return s.normal(theta_r(s, 3 - i));
}

Vector2 exit_velocity_tilde(const Srbm& s, int i) {
  check_index(i);
  const Vector2 a = exit_velocity(s, i);
  const Vector2 e = e_basis(i);
  const Vector2 n = n_basis(i);
  const Matrix2& si = s.sigma_inv();
  const Vector2 sn = s.sigma() * n;
  return dot(si * a, e) / dot(si * e, e) * e - dot(a, n) / dot(sn, n) * sn;
}

ExitVelocities exit_velocities(const Srbm& s) {
  ExitVelocities ev;
  for (int i = 1; i <= 2; ++i) {
    ev.a[i - 1] = exit_velocity(s, i);
    ev.a_tilde[i - 1] = exit_velocity_tilde(s, i);
    ev.e_basis[i - 1] = e_basis(i);
    ev.n_basis[i - 1] = n_basis(i);
  }
  return ev;
}

bool is_reflective(const Srbm& s, int face) {
  check_index(face);
  const double by_velocity = exit_velocity_tilde(s, face)[face];
  const Vector2 tmax = theta_max(s, 3 - face);
  const double by_geometry = s.gamma_i(face, tmax);
  const bool reflective = by_velocity > 0.0;
  const double scale = 1e-9 * (1.0 + norm(tmax) + norm(s.mu()));
  if (reflective != (by_geometry > 0.0) && std::fabs(by_velocity) > scale && std::fabs(by_geometry) > scale)
    throw Error(ErrorCode::kInconsistentCriteria, "reflectivity tests disagree");
  return reflective;
}

bool skew_symmetric(const Srbm& s, double tol) {
  const Matrix2& sg = s.sigma();
  const Matrix2& r = s.r();
  const Matrix2 dr_inv = Matrix2::diagonal(1.0 / r.a11, 1.0 / r.a22);
  const Matrix2 ds = sg.diag();
  const Matrix2 rhs = r * dr_inv * ds + ds * dr_inv * r.transpose();
  const Matrix2 lhs = 2.0 * sg;
  return (lhs - rhs).max_abs() <= tol * lhs.max_abs();
}

Vector2 product_form_alpha(const Srbm& s) {
  const Matrix2& sg = s.sigma();
  const Matrix2& r = s.r();
  const Matrix2 ds_inv = Matrix2::diagonal(1.0 / sg.a11, 1.0 / sg.a22);
  const Matrix2 dr = r.diag();
  return -2.0 * (ds_inv * dr * (r.inverse() * s.mu()));
}

ProductFormResult product_form(const Srbm& s, double tol) {
  ProductFormResult res;
  const Vector2 t1 = theta_r_tilde(s, 1, tol);
  const Vector2 t2 = theta_r_tilde(s, 2, tol);
  res.geometric = norm(t1 - t2) <= tol * (1.0 + norm(t1));
  res.skew_symmetric = skew_symmetric(s, tol);
  if (res.geometric != res.skew_symmetric)
    throw Error(ErrorCode::kInconsistentCriteria, "geometric and skew-symmetry product-form tests disagree");
  res.is_product_form = res.geometric;
  if (res.is_product_form) {
    const Vector2 alpha = product_form_alpha(s);
    if (norm(alpha - t1) > std::max(1e-8, 100.0 * tol) * (1.0 + norm(t1)))
      throw Error(ErrorCode::kInconsistentCriteria, "alpha does not match theta-tilde^(1,r)");
    res.alpha = alpha;
  }
  return res;
}

double pf_density(Vector2 alpha, Vector2 x) {
  if (x.x1 < 0.0 || x.x2 < 0.0) throw Error(ErrorCode::kOutOfSupport, "point outside the quadrant");
  return alpha.x1 * alpha.x2 * std::exp(-alpha.x1 * x.x1 - alpha.x2 * x.x2);
}

double pf_boundary_density(const Srbm& s, Vector2 alpha, int i, double x) {
  check_index(i);
  if (x < 0.0) throw Error(ErrorCode::kOutOfSupport, "negative boundary coordinate");
  const double c = s.sigma().row(i)[i] / (2.0 * s.r().row(i)[i]) * alpha.x1 * alpha.x2;
  return c * std::exp(-alpha[3 - i] * x);
}

double pf_mgf(Vector2 alpha, Vector2 theta) {
  if (!strictly_less(theta, alpha)) throw Error(ErrorCode::kDomainError, "theta must lie below alpha");
  return alpha.x1 * alpha.x2 / ((alpha.x1 - theta.x1) * (alpha.x2 - theta.x2));
}

double pf_boundary_mgf(const Srbm& s, Vector2 alpha, int i, double t) {
  check_index(i);
  const double a = alpha[3 - i];
  if (!(t < a)) throw Error(ErrorCode::kDomainError, "argument must lie below alpha");
  return s.sigma().row(i)[i] * alpha.x1 * alpha.x2 / (2.0 * s.r().row(i)[i] * (a - t));
}

double bar_residual(const Srbm& s, Vector2 alpha, Vector2 theta) {
  const double phi = pf_mgf(alpha, theta);
  const double phi1 = pf_boundary_mgf(s, alpha, 1, theta.x2);
  const double phi2 = pf_boundary_mgf(s, alpha, 2, theta.x1);
  return s.gamma(theta) * phi - s.gamma_i(1, theta) * phi1 - s.gamma_i(2, theta) * phi2;
}

}  // namespace srbm2d
