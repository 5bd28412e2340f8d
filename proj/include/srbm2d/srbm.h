#pragma once

#include <string_view>
#include <vector>

#include "srbm2d/geometry.h"

namespace srbm2d {

/// Raw SRBM data (covariance, drift, reflection). Nothing is checked here.
struct SrbmData {
  Matrix2 sigma;
  Vector2 mu;
  Matrix2 r;
};

enum class Condition {
  kSigmaNotSymmetric,
  kSigmaNotPD,
  kNotPMatrix,
  kNotStable1,
  kNotStable2,
};

std::string_view to_string(Condition c);

struct ValidationReport {
  bool ok = true;
  std::vector<Condition> failures;

  bool has(Condition c) const;
};

/// Checks every existence/stability condition and reports all violations.
/// Strict inequalities are tested against exactly zero.
ValidationReport validate(const SrbmData& data);

/// A validated instance. Construction throws Error(kInvalidInstance) when
/// validate() fails; sigma is stored symmetrized.
class Srbm {
 public:
  explicit Srbm(const SrbmData& data);

  const Matrix2& sigma() const { return sigma_; }
  const Matrix2& sigma_inv() const { return sigma_inv_; }
  const Vector2& mu() const { return mu_; }
  const Matrix2& r() const { return r_; }
  SrbmData data() const { return {sigma_, mu_, r_}; }

  /// gamma(theta) = -<theta, sigma theta>/2 - <mu, theta>.
  double gamma(Vector2 theta) const { return -0.5 * dot(theta, sigma_ * theta) - dot(mu_, theta); }
  /// gamma_i(theta) = <R^i, theta>, R^i the i-th column of R.
  double gamma_i(int i, Vector2 theta) const;
  /// i-th row of det(R) R^{-1}.
  Vector2 p_vec(int i) const;
  /// Outward normal of the ellipse: sigma theta + mu.
  Vector2 normal(Vector2 theta) const { return sigma_ * theta + mu_; }

  /// gamma restricted to base + t * dir.
  LineQuadratic restrict_gamma(Vector2 base, Vector2 dir) const;

  /// Instance with coordinates 1 and 2 exchanged. Every index-2 object of
  /// this instance is the coordinate swap of the index-1 object of the
  /// swapped instance.
  Srbm swapped() const;

 private:
  Matrix2 sigma_;
  Matrix2 sigma_inv_;
  Vector2 mu_;
  Matrix2 r_;
};

/// Throws std::invalid_argument unless i is 1 or 2.
void check_index(int i);

}  // namespace srbm2d
