#pragma once

#include <array>
#include <optional>

#include "srbm2d/srbm.h"

namespace srbm2d {

/// Exit velocities on the two faces; index 0 holds the i = 1 quantity.
struct ExitVelocities {
  std::array<Vector2, 2> a;
  std::array<Vector2, 2> a_tilde;
  /// Basis pairs (e^i, n^i) used by the decomposition for face F_i.
  std::array<Vector2, 2> e_basis;
  std::array<Vector2, 2> n_basis;
};

/// a^i = n(theta^(3-i,r)).
Vector2 exit_velocity(const Srbm& s, int i);
/// a-tilde^i from the orthogonal decomposition of a^i along face F_i.
Vector2 exit_velocity_tilde(const Srbm& s, int i);
ExitVelocities exit_velocities(const Srbm& s);

/// Face F_i is reflective iff the i-th entry of a-tilde^i is positive. Also
/// evaluated through gamma_{i}(theta^(3-i,max)); throws
/// Error(kInconsistentCriteria) if the two verdicts disagree clearly.
bool is_reflective(const Srbm& s, int face);

bool skew_symmetric(const Srbm& s, double tol = 1e-9);

struct ProductFormResult {
  bool is_product_form = false;
  std::optional<Vector2> alpha;
  bool skew_symmetric = false;
  bool geometric = false;
};

/// Geometric test theta-tilde^(1,r) == theta-tilde^(2,r) against skew
/// symmetry. Throws Error(kInconsistentCriteria) when they disagree.
ProductFormResult product_form(const Srbm& s, double tol = 1e-9);

/// alpha = -2 diag(sigma)^{-1} diag(R) R^{-1} mu.
Vector2 product_form_alpha(const Srbm& s);

/// Stationary density alpha1 alpha2 exp(-<alpha, x>).
double pf_density(Vector2 alpha, Vector2 x);
/// Density of nu_i along the other coordinate s.
double pf_boundary_density(const Srbm& s, Vector2 alpha, int i, double x);

/// MGF of the product-form stationary law, theta < alpha.
double pf_mgf(Vector2 alpha, Vector2 theta);
/// MGF of nu_i evaluated at the free coordinate t = theta_{3-i} < alpha_{3-i}.
double pf_boundary_mgf(const Srbm& s, Vector2 alpha, int i, double t);

/// gamma phi - gamma_1 phi_1 - gamma_2 phi_2; zero for true product-form data.
double bar_residual(const Srbm& s, Vector2 alpha, Vector2 theta);

}  // namespace srbm2d
