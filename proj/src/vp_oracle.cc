#include "srbm2d/vp_oracle.h"

#include <gsl/gsl_errno.h>
#include <gsl/gsl_min.h>
#include <gsl/gsl_multimin.h>

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <random>

#include "srbm2d/errors.h"
#include "srbm2d/skorohod.h"

namespace srbm2d {

namespace {

constexpr double kPenalty = 1e6;

double sigmoid(double q) { return 1.0 / (1.0 + std::exp(-q)); }

double sigma_norm2(const Srbm& s, Vector2 a) { return dot(a, s.sigma_inv() * a); }

// Two-segment path for the face z_2 = 0. Parameters: logit of s/T, log of
// the sliding speed of z along the face, log of -c_2, log T. The free
// velocity c has c_2 < 0 and c_1 = speed + r12 c_2 / r22, so that z leaves
// the origin along the face.
struct TwoSegment {
  const Srbm& s;
  Vector2 v;
  int steps;

  PathSpec path(const std::array<double, 4>& q, Vector2* end = nullptr) const {
    const double total = std::exp(q[3]);
    const double first = total * sigmoid(q[0]);
    const double c2 = -std::exp(q[2]);
    const Vector2 c{std::exp(q[1]) + s.r().a12 * c2 / s.r().a22, c2};
    const int n1 = std::clamp(static_cast<int>(std::lround(steps * first / total)), 1, steps - 1);
    Vector2 z;
    const Vector2 dx1 = (first / n1) * c;
    for (int k = 0; k < n1; ++k) z = skorohod_step(s.r(), z, dx1).z;
    const double rest = total - first;
    const Vector2 w = (1.0 / rest) * (v - z);
    if (end) {
      const int n2 = steps - n1;
      const Vector2 dx2 = (rest / n2) * w;
      for (int k = 0; k < n2; ++k) z = skorohod_step(s.r(), z, dx2).z;
      *end = z;
    }
    return {{first, c}, {rest, w}};
  }

  double operator()(const std::array<double, 4>& q) const {
    Vector2 end;
    const PathSpec p = path(q, &end);
    if (!(p[1].duration > 0.0) || !is_finite(p[1].velocity)) return std::numeric_limits<double>::max();
    const Vector2 miss = end - v;
    const double f = vp_cost(s, p) + kPenalty * dot(miss, miss);
    return std::isfinite(f) ? f : std::numeric_limits<double>::max();
  }
};

double nm_trampoline(const gsl_vector* x, void* params) {
  const auto& f = *static_cast<const TwoSegment*>(params);
  return f({gsl_vector_get(x, 0), gsl_vector_get(x, 1), gsl_vector_get(x, 2), gsl_vector_get(x, 3)});
}

std::pair<std::array<double, 4>, double> nelder_mead(const TwoSegment& f, std::array<double, 4> start, int iters) {
  gsl_multimin_function fn{&nm_trampoline, 4, const_cast<TwoSegment*>(&f)};
  gsl_vector* x = gsl_vector_alloc(4);
  gsl_vector* step = gsl_vector_alloc(4);
  for (int k = 0; k < 4; ++k) {
    gsl_vector_set(x, k, start[k]);
    gsl_vector_set(step, k, 0.5);
  }
  gsl_multimin_fminimizer* m = gsl_multimin_fminimizer_alloc(gsl_multimin_fminimizer_nmsimplex2, 4);
  gsl_multimin_fminimizer_set(m, &fn, x, step);
  for (int it = 0; it < iters; ++it) {
    if (gsl_multimin_fminimizer_iterate(m) != GSL_SUCCESS) break;
    if (gsl_multimin_test_size(gsl_multimin_fminimizer_size(m), 1e-7) == GSL_SUCCESS) break;
  }
  std::array<double, 4> best;
  for (int k = 0; k < 4; ++k) best[k] = gsl_vector_get(m->x, k);
  const double val = m->fval;
  gsl_multimin_fminimizer_free(m);
  gsl_vector_free(step);
  gsl_vector_free(x);
  return {best, val};
}

struct Direct {
  const Srbm& s;
  Vector2 v;
  double operator()(double log_t) const {
    const double t = std::exp(log_t);
    return vp_cost(s, {{t, (1.0 / t) * v}});
  }
};

double golden_trampoline(double x, void* params) { return (*static_cast<const Direct*>(params))(x); }

// Golden-section search on log T around the scale |v| / |mu| (sigma^{-1} norms).
double best_direct_log_t(const Srbm& s, Vector2 v) {
  const Direct f{s, v};
  const double centre = 0.5 * std::log(sigma_norm2(s, v) / sigma_norm2(s, s.mu()));
  double lo = centre - 8.0, hi = centre + 8.0, mid = centre;
  // The bracket needs an interior point below both ends.
  for (double probe = lo; probe <= hi; probe += 0.25)
    if (f(probe) < f(mid)) mid = probe;
  if (!(f(mid) < f(lo) && f(mid) < f(hi))) return mid;
  gsl_function fn{&golden_trampoline, const_cast<Direct*>(&f)};
  gsl_min_fminimizer* m = gsl_min_fminimizer_alloc(gsl_min_fminimizer_goldensection);
  gsl_min_fminimizer_set(m, &fn, mid, lo, hi);
  for (int it = 0; it < 200; ++it) {
    gsl_min_fminimizer_iterate(m);
    lo = gsl_min_fminimizer_x_lower(m);
    hi = gsl_min_fminimizer_x_upper(m);
    if (gsl_min_test_interval(lo, hi, 1e-10, 0.0) == GSL_SUCCESS) break;
  }
  mid = gsl_min_fminimizer_x_minimum(m);
  gsl_min_fminimizer_free(m);
  return mid;
}

OracleResult oracle_face_2(const Srbm& s, Vector2 v, const OracleOptions& opts) {
  OracleResult best;
  if (v.x1 == 0.0 && v.x2 == 0.0) {
    best.direct = true;
    return best;
  }

  const double t_direct = std::exp(best_direct_log_t(s, v));
  best.path = {{t_direct, (1.0 / t_direct) * v}};
  best.value = vp_cost(s, best.path);
  best.endpoint = regulated_endpoint(s, best.path, opts.path_steps);
  best.direct = true;

  const TwoSegment f{s, v, opts.path_steps};
  const double log_t0 = std::log(t_direct);
  const double log_c0 = std::log(norm(s.mu()));
  std::array<double, 4> q_best{};
  double f_best = std::numeric_limits<double>::max();
  for (double frac : {0.1, 0.3, 0.5, 0.7, 0.9, 0.98}) {
    for (int a = -2; a <= 2; ++a) {
      for (int b = -2; b <= 2; ++b) {
        for (int c = -2; c <= 2; ++c) {
          const std::array<double, 4> q{std::log(frac / (1 - frac)), log_c0 + a * std::log(2.5),
                                        log_c0 + b * std::log(2.5), log_t0 + c * std::log(2.5)};
          const double val = f(q);
          if (val < f_best) {
            f_best = val;
            q_best = q;
          }
        }
      }
    }
  }

  std::mt19937_64 rng(opts.seed);
  std::normal_distribution<double> jitter(0.0, 0.5);
  std::tie(q_best, f_best) = nelder_mead(f, q_best, opts.max_iterations);
  for (int r = 0; r < opts.restarts; ++r) {
    std::array<double, 4> start = q_best;
    for (double& x : start) x += jitter(rng);
    auto [q, val] = nelder_mead(f, start, opts.max_iterations);
    if (val < f_best) {
      f_best = val;
      q_best = q;
    }
  }

  Vector2 end;
  const PathSpec p = f.path(q_best, &end);
  const double cost = vp_cost(s, p);
  if (norm(end - v) <= 1e-3 * (1.0 + norm(v)) && cost < best.value) {
    best.value = cost;
    best.path = p;
    best.endpoint = end;
    best.direct = false;
  }
  if (norm(best.endpoint - v) > 1e-3 * (1.0 + norm(v)))
    throw Error(ErrorCode::kNoFeasiblePath, "no candidate path reaches the target");
  return best;
}

}  // namespace

double vp_cost(const Srbm& s, const PathSpec& path) {
  double total = 0.0;
  for (const PathSegment& seg : path) total += 0.5 * seg.duration * sigma_norm2(s, seg.velocity - s.mu());
  return total;
}

Vector2 regulated_endpoint(const Srbm& s, const PathSpec& path, int steps) {
  double horizon = 0.0;
  for (const PathSegment& seg : path) horizon += seg.duration;
  Vector2 z;
  for (const PathSegment& seg : path) {
    const int n = std::max(1, static_cast<int>(std::lround(steps * seg.duration / horizon)));
    const Vector2 dx = (seg.duration / n) * seg.velocity;
    for (int k = 0; k < n; ++k) z = skorohod_step(s.r(), z, dx).z;
  }
  return z;
}

OracleResult vp_oracle_i(const Srbm& s, int i, Vector2 v, const OracleOptions& opts) {
  check_index(i);
  if (!(v.x1 >= 0.0) || !(v.x2 >= 0.0)) throw Error(ErrorCode::kDomainError, "direction must be nonnegative");
  gsl_set_error_handler_off();
  if (i == 1) return oracle_face_2(s, v, opts);
  OracleResult r = oracle_face_2(s.swapped(), swapped(v), opts);
  for (PathSegment& seg : r.path) seg.velocity = swapped(seg.velocity);
  r.endpoint = swapped(r.endpoint);
  return r;
}

double vp_oracle(const Srbm& s, Vector2 v, const OracleOptions& opts) {
  return std::min(vp_oracle_i(s, 1, v, opts).value, vp_oracle_i(s, 2, v, opts).value);
}

}  // namespace srbm2d
