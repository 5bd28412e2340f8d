#include "srbm2d/srbm.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "srbm2d/errors.h"

namespace srbm2d {

std::string_view to_string(Condition c) {
  switch (c) {
    case Condition::kSigmaNotSymmetric: return "SigmaNotSymmetric";
    case Condition::kSigmaNotPD: return "SigmaNotPD";
    case Condition::kNotPMatrix: return "NotPMatrix";
    case Condition::kNotStable1: return "NotStable1";
    case Condition::kNotStable2: return "NotStable2";
  }
  return "Unknown";
}

bool ValidationReport::has(Condition c) const {
  return std::find(failures.begin(), failures.end(), c) != failures.end();
}

namespace {

bool nearly_symmetric(const Matrix2& s) {
  const double scale = std::max({std::fabs(s.a12), std::fabs(s.a21), 1.0});
  return std::fabs(s.a12 - s.a21) <= 1e-12 * scale;
}

Matrix2 symmetrize(const Matrix2& s) {
  const double off = 0.5 * (s.a12 + s.a21);
  return {s.a11, off, off, s.a22};
}

}  // namespace

ValidationReport validate(const SrbmData& data) {
  ValidationReport report;
  auto fail = [&report](Condition c) {
    report.ok = false;
    report.failures.push_back(c);
  };

  const Matrix2& s = data.sigma;
  if (!nearly_symmetric(s)) fail(Condition::kSigmaNotSymmetric);
  const Matrix2 sym = symmetrize(s);
  // Written as !(x > 0) so that NaN entries fail.
  if (!(sym.a11 > 0.0) || !(sym.det() > 0.0)) fail(Condition::kSigmaNotPD);

  const Matrix2& r = data.r;
  if (!(r.a11 > 0.0) || !(r.a22 > 0.0) || !(r.det() > 0.0)) fail(Condition::kNotPMatrix);

  const Vector2& mu = data.mu;
  if (!(r.a22 * mu.x1 - r.a12 * mu.x2 < 0.0)) fail(Condition::kNotStable1);
  if (!(r.a11 * mu.x2 - r.a21 * mu.x1 < 0.0)) fail(Condition::kNotStable2);
  return report;
}

void check_index(int i) {
  if (i != 1 && i != 2) throw std::invalid_argument("index must be 1 or 2, got " + std::to_string(i));
}

Srbm::Srbm(const SrbmData& data) {
  const ValidationReport report = validate(data);
  if (!report.ok) {
    std::string msg = "instance fails";
    for (Condition c : report.failures) msg += " " + std::string(to_string(c));
    throw Error(ErrorCode::kInvalidInstance, msg);
  }
  sigma_ = symmetrize(data.sigma);
  sigma_inv_ = sigma_.inverse();
  mu_ = data.mu;
  r_ = data.r;
}

double Srbm::gamma_i(int i, Vector2 theta) const {
  check_index(i);
  return dot(r_.col(i), theta);
}

Vector2 Srbm::p_vec(int i) const {
  check_index(i);
  return i == 1 ? Vector2{r_.a22, -r_.a12} : Vector2{-r_.a21, r_.a11};
}

LineQuadratic Srbm::restrict_gamma(Vector2 base, Vector2 dir) const {
  // gamma(base + t dir) = gamma(base) - t <n(base), dir> - t^2 <dir, sigma dir>/2
  return {-0.5 * dot(dir, sigma_ * dir), -dot(normal(base), dir), gamma(base)};
}

Srbm Srbm::swapped() const {
  return Srbm(SrbmData{sigma_.swapped(), srbm2d::swapped(mu_), r_.swapped()});
}

}  // namespace srbm2d
