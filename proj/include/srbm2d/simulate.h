#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "srbm2d/srbm.h"

namespace srbm2d {

struct SimConfig {
  double dt = 1e-3;
  double horizon = 2e5;
  double burn_in = 100.0;
  std::uint64_t seed = 1;
  int replications = 1;
  int bins = 240;
  /// Histogram range; 0 picks 10 / min(tau_1, tau_2).
  double x_max = 0.0;
  int threads = 1;
};

/// Throws Error(kConfigError) unless burn_in < horizon, dt <= 0.01 min(1, 1/|mu|)
/// and the counts are positive.
void check_config(const Srbm& s, const SimConfig& cfg);

/// Estimates over one replication or pooled over all of them.
struct SimEstimate {
  /// Time-average densities of Z_1, Z_2 on the histogram bins.
  std::array<std::vector<double>, 2> density;
  /// P(Z_i > x) at the bin edges x_k = k * width, k = 0..bins.
  std::array<std::vector<double>, 2> tail;
  /// nu_i((x, inf)) per unit time at the same edges, x running along Z_{3-i}.
  std::array<std::vector<double>, 2> boundary_tail;
  std::array<double, 2> mean{};
  /// Means over the first and second halves of the post-burn-in window.
  std::array<std::array<double, 2>, 2> half_means{};
  /// Regulator totals y_i(horizon) - y_i(burn_in).
  std::array<double, 2> y_total{};
  std::array<double, 2> tail_decay{};
  std::array<double, 2> boundary_decay{};
};

struct SimResult {
  double bin_width = 0.0;
  int bins = 0;
  SimEstimate pooled;
  std::vector<SimEstimate> replications;
  /// Across-replication standard errors (zero with one replication).
  std::array<double, 2> mean_se{};
  std::array<double, 2> tail_decay_se{};
  std::array<double, 2> boundary_decay_se{};
};

/// Euler scheme with a reflection solve per step. Replication k draws its
/// normals from a generator seeded by (seed, k), so results do not depend
/// on the thread count.
SimResult simulate(const Srbm& s, const SimConfig& cfg);

/// Decay rate from a sampled tail: slope of -log tail against x over the
/// points where tail / tail(0) lies in [1e-3, 0.3]. NaN if fewer than 3 points.
double fit_tail_decay(const std::vector<double>& edges_tail, double bin_width);

}  // namespace srbm2d
