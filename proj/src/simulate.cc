#include "srbm2d/simulate.h"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <random>
#include <string>
#include <thread>

#include "srbm2d/domains_rate.h"
#include "srbm2d/errors.h"
#include "srbm2d/skorohod.h"

namespace srbm2d {

namespace {

struct Layout {
  int bins;
  double width;
};

std::vector<double> right_cumulative(const std::vector<double>& counts, double overflow, double scale) {
  std::vector<double> out(counts.size() + 1);
  double acc = overflow;
  out.back() = acc * scale;
  for (std::size_t k = counts.size(); k-- > 0;) {
    acc += counts[k];
    out[k] = acc * scale;
  }
  return out;
}

SimEstimate run_replication(const Srbm& s, const SimConfig& cfg, Layout lay, std::uint64_t rep) {
  std::seed_seq seq{static_cast<std::uint32_t>(cfg.seed), static_cast<std::uint32_t>(cfg.seed >> 32),
                    static_cast<std::uint32_t>(rep), static_cast<std::uint32_t>(rep >> 32)};
  std::mt19937_64 engine(seq);
  std::normal_distribution<double> normal;

  const Matrix2& sg = s.sigma();
  const double l11 = std::sqrt(sg.a11);
  const double l21 = sg.a21 / l11;
  const double l22 = std::sqrt(sg.a22 - l21 * l21);
  const double sq = std::sqrt(cfg.dt);
  const Vector2 drift = cfg.dt * s.mu();
  const Matrix2& r = s.r();

  const long long total = std::llround(cfg.horizon / cfg.dt);
  const long long burn = std::llround(cfg.burn_in / cfg.dt);
  const long long kept = total - burn;
  const long long half = burn + kept / 2;

  std::array<std::vector<double>, 2> hist{std::vector<double>(lay.bins), std::vector<double>(lay.bins)};
  std::array<std::vector<double>, 2> push{std::vector<double>(lay.bins), std::vector<double>(lay.bins)};
  std::array<double, 2> hist_over{}, push_over{}, sum{}, y{};
  std::array<std::array<double, 2>, 2> half_sum{};
  const double inv_width = 1.0 / lay.width;
  auto bin_of = [&](double v) {
    const double b = v * inv_width;
    return b < lay.bins ? static_cast<int>(b) : -1;
  };

  Vector2 z;
  for (long long step = 0; step < total; ++step) {
    const double xi1 = normal(engine);
    const double xi2 = normal(engine);
    const Vector2 dx = drift + Vector2{sq * l11 * xi1, sq * (l21 * xi1 + l22 * xi2)};
    const SkorohodStep st = skorohod_step(r, z, dx);
    z = st.z;
    if (step < burn) continue;
    const std::array<double, 2> zz{z.x1, z.x2};
    const std::array<double, 2> dy{st.dy.x1, st.dy.x2};
    const int h = step < half ? 0 : 1;
    for (int i = 0; i < 2; ++i) {
      sum[i] += zz[i];
      half_sum[h][i] += zz[i];
      const int b = bin_of(zz[i]);
      if (b >= 0) hist[i][b] += 1.0;
      else hist_over[i] += 1.0;
      if (dy[i] > 0.0) {
        y[i] += dy[i];
        const int o = bin_of(zz[1 - i]);
        if (o >= 0) push[i][o] += dy[i];
        else push_over[i] += dy[i];
      }
    }
  }

  SimEstimate e;
  const double n = static_cast<double>(kept);
  const double span = n * cfg.dt;
  for (int i = 0; i < 2; ++i) {
    e.density[i].resize(lay.bins);
    for (int b = 0; b < lay.bins; ++b) e.density[i][b] = hist[i][b] / (n * lay.width);
    e.tail[i] = right_cumulative(hist[i], hist_over[i], 1.0 / n);
    e.boundary_tail[i] = right_cumulative(push[i], push_over[i], 1.0 / span);
    e.mean[i] = sum[i] / n;
    e.half_means[0][i] = half_sum[0][i] / static_cast<double>(half - burn);
    e.half_means[1][i] = half_sum[1][i] / static_cast<double>(total - half);
    e.y_total[i] = y[i];
    e.tail_decay[i] = fit_tail_decay(e.tail[i], lay.width);
    e.boundary_decay[i] = fit_tail_decay(e.boundary_tail[i], lay.width);
  }
  return e;
}

void accumulate(std::vector<double>& into, const std::vector<double>& v, double w) {
  for (std::size_t k = 0; k < v.size(); ++k) into[k] += w * v[k];
}

template <class Get>
double std_error(const std::vector<SimEstimate>& reps, Get get) {
  const std::size_t n = reps.size();
  if (n < 2) return 0.0;
  double m = 0;
  for (const auto& r : reps) m += get(r);
  m /= n;
  double ss = 0;
  for (const auto& r : reps) ss += (get(r) - m) * (get(r) - m);
  return std::sqrt(ss / (n - 1) / n);
}

}  // namespace

void check_config(const Srbm& s, const SimConfig& cfg) {
  auto bad = [](const std::string& m) { throw Error(ErrorCode::kConfigError, m); };
  if (!(cfg.dt > 0.0)) bad("dt must be positive");
  const double mu_norm = norm(s.mu());
  const double dt_cap = 0.01 * std::min(1.0, 1.0 / mu_norm);
  if (cfg.dt > dt_cap * (1.0 + 1e-12)) bad("dt exceeds 0.01 min(1, 1/|mu|) = " + std::to_string(dt_cap));
  if (!(cfg.burn_in >= 0.0) || !(cfg.burn_in < cfg.horizon)) bad("need 0 <= burn_in < horizon");
  if (!std::isfinite(cfg.horizon)) bad("horizon must be finite");
  if (std::llround((cfg.horizon - cfg.burn_in) / cfg.dt) < 2) bad("fewer than 2 post burn-in steps");
  if (cfg.replications < 1) bad("replications must be positive");
  if (cfg.bins < 2) bad("bins must be at least 2");
  if (cfg.threads < 1) bad("threads must be positive");
  if (!(cfg.x_max >= 0.0) || !std::isfinite(cfg.x_max)) bad("x_max must be finite and nonnegative");
}

double fit_tail_decay(const std::vector<double>& tail, double bin_width) {
  if (tail.empty() || !(tail[0] > 0.0)) return std::numeric_limits<double>::quiet_NaN();
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int n = 0;
  for (std::size_t k = 0; k < tail.size(); ++k) {
    const double rel = tail[k] / tail[0];
    if (rel < 1e-3 || rel > 0.3) continue;
    const double x = k * bin_width;
    const double yv = std::log(tail[k]);
    sx += x;
    sy += yv;
    sxx += x * x;
    sxy += x * yv;
    ++n;
  }
  if (n < 3) return std::numeric_limits<double>::quiet_NaN();
  return -(n * sxy - sx * sy) / (n * sxx - sx * sx);
}

SimResult simulate(const Srbm& s, const SimConfig& cfg) {
  check_config(s, cfg);
  double x_max = cfg.x_max;
  if (x_max == 0.0) {
    const Vector2 t = tau(Geometry(s)).tau;
    x_max = 10.0 / std::min(t.x1, t.x2);
  }
  const Layout lay{cfg.bins, x_max / cfg.bins};

  SimResult res;
  res.bins = lay.bins;
  res.bin_width = lay.width;
  res.replications.resize(cfg.replications);
  std::atomic<int> next{0};
  auto worker = [&] {
    for (int k = next++; k < cfg.replications; k = next++)
      res.replications[k] = run_replication(s, cfg, lay, static_cast<std::uint64_t>(k));
  };
  const int nthreads = std::min(cfg.threads, cfg.replications);
  std::vector<std::thread> pool;
  for (int t = 1; t < nthreads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();

  // Pool in replication order so the result is independent of scheduling.
  SimEstimate& p = res.pooled;
  const double w = 1.0 / cfg.replications;
  for (int i = 0; i < 2; ++i) {
    p.density[i].assign(lay.bins, 0.0);
    p.tail[i].assign(lay.bins + 1, 0.0);
    p.boundary_tail[i].assign(lay.bins + 1, 0.0);
  }
  for (const SimEstimate& e : res.replications) {
    for (int i = 0; i < 2; ++i) {
      accumulate(p.density[i], e.density[i], w);
      accumulate(p.tail[i], e.tail[i], w);
      accumulate(p.boundary_tail[i], e.boundary_tail[i], w);
      p.mean[i] += w * e.mean[i];
      p.half_means[0][i] += w * e.half_means[0][i];
      p.half_means[1][i] += w * e.half_means[1][i];
      p.y_total[i] += w * e.y_total[i];
    }
  }
  for (int i = 0; i < 2; ++i) {
    p.tail_decay[i] = fit_tail_decay(p.tail[i], lay.width);
    p.boundary_decay[i] = fit_tail_decay(p.boundary_tail[i], lay.width);
    res.mean_se[i] = std_error(res.replications, [i](const SimEstimate& e) { return e.mean[i]; });
    res.tail_decay_se[i] = std_error(res.replications, [i](const SimEstimate& e) { return e.tail_decay[i]; });
    res.boundary_decay_se[i] =
        std_error(res.replications, [i](const SimEstimate& e) { return e.boundary_decay[i]; });
  }
  return res;
}

}  // namespace srbm2d
