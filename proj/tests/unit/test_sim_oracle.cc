#include <doctest.h>

#include <cmath>
#include <random>

#include "../support/instances.h"
#include "srbm2d/domains_rate.h"
#include "srbm2d/errors.h"
#include "srbm2d/simulate.h"
#include "srbm2d/skorohod.h"
#include "srbm2d/vp_oracle.h"

using namespace srbm2d;
using srbm2d::testing::e1_data;
using srbm2d::testing::identity_data;

namespace {

bool near(Vector2 a, Vector2 b, double tol = 1e-12) { return norm(a - b) <= tol * (1.0 + norm(b)); }

void check_complementarity(const Matrix2& r, Vector2 z, Vector2 dx, const SkorohodStep& st) {
  CHECK(near(st.z, z + dx + r * st.dy, 1e-12));
  CHECK(st.z.x1 >= 0.0);
  CHECK(st.z.x2 >= 0.0);
  CHECK(st.dy.x1 >= 0.0);
  CHECK(st.dy.x2 >= 0.0);
  CHECK(dot(st.z, st.dy) <= 1e-12 * (1 + norm(z)) * (1 + norm(st.dy)));
}

}  // namespace

TEST_CASE("skorohod step examples") {
  const Matrix2 id = Matrix2::identity();
  SkorohodStep st = skorohod_step(id, {1, 1}, {0.1, 0.1});
  CHECK(near(st.z, {1.1, 1.1}));
  CHECK(st.dy == Vector2{0, 0});

  st = skorohod_step(id, {0.1, 1}, {-0.5, 0});
  CHECK(near(st.z, {0, 1}));
  CHECK(near(st.dy, {0.4, 0}));

  const Matrix2 r{1, 0, 0.5, 1};
  st = skorohod_step(r, {0, 0}, {-1, -1});
  check_complementarity(r, {0, 0}, {-1, -1}, st);
  const auto all = skorohod_candidates(r, {0, 0}, {-1, -1});
  REQUIRE(all.size() == 1);
  CHECK(near(all[0].z, st.z));
  CHECK(near(all[0].dy, st.dy));
}

TEST_CASE("P-matrix steps have exactly one feasible active set") {
  std::mt19937_64 rng(51);
  std::uniform_real_distribution<double> u(-2.0, 2.0), pos(0.0, 2.0);
  for (int n = 0; n < 1000; ++n) {
    const Srbm s(srbm2d::testing::random_instance(rng));
    const Vector2 z{pos(rng), pos(rng)}, dx{u(rng), u(rng)};
    const auto all = skorohod_candidates(s.r(), z, dx);
    CHECK(all.size() == 1);
    check_complementarity(s.r(), z, dx, skorohod_step(s, z, dx));
  }
}

TEST_CASE("complementarity along a simulated path") {
  std::mt19937_64 rng(52);
  std::normal_distribution<double> nd;
  const Srbm s(e1_data());
  Vector2 z{0, 0};
  int violations = 0;
  for (int k = 0; k < 100000; ++k) {
    const Vector2 dx = 1e-3 * s.mu() + std::sqrt(1e-3) * Vector2{nd(rng), nd(rng)};
    const SkorohodStep st = skorohod_step(s, z, dx);
    if (dot(st.z, st.dy) > 1e-12 * (1 + norm(z)) * (1 + norm(st.dy)) || st.z.x1 < 0 || st.z.x2 < 0) ++violations;
    z = st.z;
  }
  CHECK(violations == 0);
}

TEST_CASE("simulation config checks") {
  const Srbm s(identity_data());
  SimConfig cfg;
  cfg.horizon = 1000;
  CHECK_NOTHROW(check_config(s, cfg));
  auto code = [&](SimConfig c) {
    try {
      check_config(s, c);
    } catch (const Error& e) {
      return e.code();
    }
    return ErrorCode::kParseError;
  };
  SimConfig bad = cfg;
  bad.dt = 0.05;
  CHECK(code(bad) == ErrorCode::kConfigError);
  bad = cfg;
  bad.burn_in = 2000;
  CHECK(code(bad) == ErrorCode::kConfigError);
  bad = cfg;
  bad.replications = 0;
  CHECK(code(bad) == ErrorCode::kConfigError);
  bad = cfg;
  bad.bins = 0;
  CHECK(code(bad) == ErrorCode::kConfigError);
}

TEST_CASE("short identity simulation") {
  const Srbm s(identity_data());
  SimConfig cfg;
  cfg.horizon = 5000;
  cfg.replications = 2;
  cfg.threads = 2;
  const SimResult r = simulate(s, cfg);
  const SimEstimate& e = r.pooled;
  REQUIRE(e.density[0].size() == static_cast<std::size_t>(cfg.bins));
  REQUIRE(e.tail[0].size() == static_cast<std::size_t>(cfg.bins + 1));
  double mass = 0.0;
  for (double d : e.density[0]) {
    CHECK(d >= 0.0);
    mass += d * r.bin_width;
  }
  CHECK(mass == doctest::Approx(1.0).epsilon(1e-3));
  for (int i = 0; i < 2; ++i) {
    CHECK(e.mean[i] == doctest::Approx(0.5).epsilon(0.15));
    CHECK(e.tail_decay[i] == doctest::Approx(2.0).epsilon(0.25));
    // nu_i has total mass -(R^{-1} mu)_i = 1
    CHECK(e.y_total[i] / (cfg.horizon - cfg.burn_in) == doctest::Approx(1.0).epsilon(0.1));
    for (std::size_t k = 0; k + 1 < e.tail[i].size(); ++k) CHECK(e.tail[i][k + 1] <= e.tail[i][k]);
  }
  for (const SimEstimate& rep : r.replications)
    for (int i = 0; i < 2; ++i) {
      // halves of a stationary run agree within 3 pooled standard errors
      const double diff = std::fabs(rep.half_means[0][i] - rep.half_means[1][i]);
      CHECK(diff <= 3 * std::sqrt(2.0) * r.mean_se[i] + 0.05);
    }
}

TEST_CASE("simulation is deterministic across thread counts") {
  const Srbm s(e1_data());
  SimConfig cfg;
  cfg.horizon = 800;
  cfg.replications = 3;
  cfg.seed = 99;
  cfg.threads = 1;
  const SimResult a = simulate(s, cfg);
  cfg.threads = 3;
  const SimResult b = simulate(s, cfg);
  for (int i = 0; i < 2; ++i) {
    CHECK(a.pooled.tail[i] == b.pooled.tail[i]);
    CHECK(a.pooled.boundary_tail[i] == b.pooled.boundary_tail[i]);
    CHECK(a.pooled.mean[i] == b.pooled.mean[i]);
  }
  cfg.seed = 100;
  const SimResult c = simulate(s, cfg);
  CHECK(c.pooled.mean[0] != a.pooled.mean[0]);
}

TEST_CASE("fit_tail_decay on an exact exponential") {
  std::vector<double> tail;
  for (int k = 0; k <= 200; ++k) tail.push_back(std::exp(-1.7 * 0.05 * k));
  CHECK(fit_tail_decay(tail, 0.05) == doctest::Approx(1.7).epsilon(1e-9));
  CHECK(std::isnan(fit_tail_decay({1.0, 0.5}, 0.1)));
}

TEST_CASE("path cost examples") {
  const Srbm s(identity_data());
  CHECK(vp_cost(s, {{3.0, s.mu()}}) == 0.0);
  CHECK(vp_cost(s, {{1.0, {1, 1}}}) == doctest::Approx(4.0));
  const PathSpec split{{0.5, {0.3, 2}}, {0.5, {0.3, 2}}};
  CHECK(vp_cost(s, split) == doctest::Approx(vp_cost(s, {{1.0, {0.3, 2}}})));
}

TEST_CASE("regulated endpoint of a path") {
  const Srbm s(identity_data());
  // push into face 2 then move right: the second coordinate is held at 0
  const Vector2 end = regulated_endpoint(s, {{1.0, {0, -1}}, {1.0, {1, 0}}});
  CHECK(near(end, {1, 0}, 1e-9));
}

TEST_CASE("oracle examples") {
  const Srbm id(identity_data());
  CHECK(vp_oracle_i(id, 1, {1, 1}).value == doctest::Approx(4).epsilon(0.02));
  CHECK(vp_oracle_i(id, 1, {1, 0}).value == doctest::Approx(2).epsilon(0.02));
  CHECK(vp_oracle(id, {0, 1}) == doctest::Approx(2).epsilon(0.02));
  CHECK(vp_oracle(id, {0, 0}) == 0.0);
  CHECK_THROWS_AS(vp_oracle(id, {-1, 1}), Error);

  const Srbm e1(e1_data());
  CHECK(vp_oracle(e1, {1, 1}) == doctest::Approx(3.2).epsilon(0.02));
  CHECK(vp_oracle(e1, {0, 1}) == doctest::Approx(0.8).epsilon(0.02));
}

TEST_CASE("oracle bounds the closed form from above up to discretization") {
  std::mt19937_64 rng(53);
  std::uniform_real_distribution<double> ang(0.0, M_PI / 2);
  for (int n = 0; n < 3; ++n) {
    const Geometry g{Srbm(srbm2d::testing::random_instance(rng))};
    const double a = ang(rng);
    const Vector2 v{std::cos(a), std::sin(a)};
    for (int i = 1; i <= 2; ++i) {
      const double closed = rate_i(g, i, v).value;
      CHECK(vp_oracle_i(g.srbm, i, v).value >= closed * 0.98);
    }
  }
}
