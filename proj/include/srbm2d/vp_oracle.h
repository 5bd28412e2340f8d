#pragma once

#include <cstdint>
#include <vector>

#include "srbm2d/srbm.h"

namespace srbm2d {

struct PathSegment {
  double duration = 0.0;
  Vector2 velocity;
};

/// Piecewise-linear free path x(.) starting at the origin.
using PathSpec = std::vector<PathSegment>;

/// sum_k (t_k / 2) <w_k - mu, sigma^{-1} (w_k - mu)>.
double vp_cost(const Srbm& s, const PathSpec& path);

/// Regulated endpoint z(T) of the path, stepping the reflection map over
/// `steps` pieces shared among the segments in proportion to their durations.
Vector2 regulated_endpoint(const Srbm& s, const PathSpec& path, int steps = 2000);

struct OracleOptions {
  int path_steps = 2000;
  int restarts = 3;
  int max_iterations = 1500;
  std::uint64_t seed = 7;
};

struct OracleResult {
  double value = 0.0;
  PathSpec path;
  Vector2 endpoint;
  /// True when the single-segment path won.
  bool direct = false;
};

/// Minimum cost over single-segment paths and two-segment paths whose first
/// segment slides along the face z_{3-i} = 0 away from the origin (free
/// velocity pointing out of the quadrant, c_{3-i} < 0) and whose second
/// segment runs straight to v. Throws Error(kNoFeasiblePath) if the best path
/// misses v by more than 1e-3 (1 + |v|).
OracleResult vp_oracle_i(const Srbm& s, int i, Vector2 v, const OracleOptions& opts = {});

/// min over i of vp_oracle_i.
double vp_oracle(const Srbm& s, Vector2 v, const OracleOptions& opts = {});

}  // namespace srbm2d
