#include "srbm2d/skorohod.h"

#include <cmath>
#include <optional>

#include "srbm2d/errors.h"

namespace srbm2d {

namespace {

constexpr double kFeasTol = 1e-12;

// Active set encoded as bit 0 -> face 1, bit 1 -> face 2.
std::optional<SkorohodStep> try_active_set(const Matrix2& r, Vector2 w, int set) {
  Vector2 dy;
  switch (set) {
    case 0: break;
    case 1: dy.x1 = -w.x1 / r.a11; break;
    case 2: dy.x2 = -w.x2 / r.a22; break;
    default: {
      const double det = r.det();
      dy = {(-w.x1 * r.a22 + w.x2 * r.a12) / det, (-w.x2 * r.a11 + w.x1 * r.a21) / det};
    }
  }
  Vector2 z = w + r * dy;
  if (set & 1) z.x1 = 0.0;
  if (set & 2) z.x2 = 0.0;
  const double eps = kFeasTol * (1.0 + norm(w));
  if (z.x1 < -eps || z.x2 < -eps || dy.x1 < -eps || dy.x2 < -eps) return std::nullopt;
  z = {std::fmax(z.x1, 0.0), std::fmax(z.x2, 0.0)};
  dy = {std::fmax(dy.x1, 0.0), std::fmax(dy.x2, 0.0)};
  return SkorohodStep{z, dy};
}

}  // namespace

SkorohodStep skorohod_step(const Matrix2& r, Vector2 z, Vector2 dx) {
  const Vector2 w = z + dx;
  if (w.x1 >= 0.0 && w.x2 >= 0.0) return {w, {}};
  for (int set = 1; set <= 3; ++set)
    if (auto step = try_active_set(r, w, set)) return *step;
  throw Error(ErrorCode::kNoSolution, "no feasible reflection for this step");
}

std::vector<SkorohodStep> skorohod_candidates(const Matrix2& r, Vector2 z, Vector2 dx) {
  std::vector<SkorohodStep> out;
  for (int set = 0; set <= 3; ++set)
    if (auto step = try_active_set(r, z + dx, set)) out.push_back(*step);
  return out;
}

}  // namespace srbm2d
