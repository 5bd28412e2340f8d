#pragma once

#include <vector>

#include "srbm2d/srbm.h"

namespace srbm2d {

struct SkorohodStep {
  Vector2 z;
  Vector2 dy;
};

/// Solves z' = z + dx + R dy >= 0, dy >= 0, <z', dy> = 0 by trying the
/// active sets {}, {1}, {2}, {1,2} in turn. Throws Error(kNoSolution) if none
/// is feasible (only possible through numerical breakdown).
SkorohodStep skorohod_step(const Matrix2& r, Vector2 z, Vector2 dx);
inline SkorohodStep skorohod_step(const Srbm& s, Vector2 z, Vector2 dx) { return skorohod_step(s.r(), z, dx); }

/// Every feasible active-set solution; exactly one for a P-matrix R.
std::vector<SkorohodStep> skorohod_candidates(const Matrix2& r, Vector2 z, Vector2 dx);

}  // namespace srbm2d
