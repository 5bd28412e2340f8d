#include "srbm2d/tail.h"

#include <algorithm>
#include <cmath>
#include <string>

#include "srbm2d/errors.h"

namespace srbm2d {

std::string_view to_string(Measure m) { return m == Measure::kNu1 ? "nu1" : "nu2"; }

std::string_view to_string(BoundaryCase c) {
  return c == BoundaryCase::kInterior ? "Interior" : "Boundary";
}

std::string_view to_string(FitStatus s) {
  return s == FitStatus::kOk ? "Ok" : "NonAsymptoticRegime";
}

std::string_view to_string(CheckStatus s) {
  switch (s) {
    case CheckStatus::kVerified: return "Verified";
    case CheckStatus::kFailed: return "Failed";
    case CheckStatus::kNotVerifiable: return "NotVerifiable";
  }
  return "?";
}

double kappa_for_cell(BoundaryCase bc, Category cat, bool theta_r_is_max, bool tau_hits_theta_r) {
  if (bc == BoundaryCase::kInterior) {
    if (cat == Category::kII && tau_hits_theta_r) return 1.0;
    return 0.0;
  }
  switch (cat) {
    case Category::kI: return theta_r_is_max ? -0.5 : -1.5;
    case Category::kII: return theta_r_is_max ? 0.0 : -0.5;
    case Category::kIII: break;
  }
  throw Error(ErrorCode::kImpossibleCase, "Category III with tau_1 on theta^(1,max)_1");
}

namespace {

bool snapped_equal(double a, double b, double tol) {
  return std::fabs(a - b) <= tol * (1.0 + std::max(std::fabs(a), std::fabs(b)));
}

TailAsymptotic classify_nu2(const Geometry& g) {
  TailAsymptotic t;
  const Vector2 cap = tau(g).tau;
  const Vector2& tr = g.theta_r(1);
  const Vector2& tm = g.theta_max(1);
  t.category = category(g).tag;
  t.decay = cap.x1;
  t.boundary_case = snapped_equal(cap.x1, tm.x1, g.tol) ? BoundaryCase::kBoundary : BoundaryCase::kInterior;
  t.theta_r_is_max = norm(tr - tm) <= g.tol * (1.0 + norm(tm));
  // As points: with theta^(1,r) on the arc above theta^(1,max) the first
  // coordinates can agree while the pole sits on the other branch.
  t.tau_hits_theta_r = norm(cap - tr) <= g.tol * (1.0 + norm(tr));
  t.kappa = kappa_for_cell(t.boundary_case, t.category, t.theta_r_is_max, t.tau_hits_theta_r);
  return t;
}

void check_samples(const TailSamples& f) {
  if (f.grid.size() != f.values.size() || f.grid.size() < 2)
    throw Error(ErrorCode::kDomainError, "tail samples need matching grid and values, at least 2");
  for (std::size_t k = 0; k < f.grid.size(); ++k) {
    if (!std::isfinite(f.grid[k]) || !std::isfinite(f.values[k]))
      throw Error(ErrorCode::kDomainError, "non-finite tail sample");
    if (k > 0 && !(f.grid[k] > f.grid[k - 1]))
      throw Error(ErrorCode::kDomainError, "tail grid must be strictly increasing");
  }
}

struct Coeffs {
  double log_b, kappa, alpha;
};

// Least squares of y on the centered columns [log x, -x, (1/x)] by modified
// Gram-Schmidt; alpha_hint moves the -x column to the left-hand side.
Coeffs least_squares(const std::vector<double>& x, const std::vector<double>& y,
                     std::optional<double> alpha_hint, bool inverse_term) {
  const std::size_t n = x.size();
  std::vector<std::vector<double>> cols;
  cols.emplace_back(n);
  if (!alpha_hint) cols.emplace_back(n);
  if (inverse_term) cols.emplace_back(n);
  std::vector<double> z(n);
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t j = 0;
    cols[j++][k] = std::log(x[k]);
    if (!alpha_hint) cols[j++][k] = -x[k];
    if (inverse_term) cols[j++][k] = 1.0 / x[k];
    z[k] = y[k] + (alpha_hint ? *alpha_hint * x[k] : 0.0);
  }
  auto mean = [n](const std::vector<double>& a) {
    double s = 0;
    for (double v : a) s += v;
    return s / n;
  };
  auto ip = [n](const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0;
    for (std::size_t k = 0; k < n; ++k) s += a[k] * b[k];
    return s;
  };

  const std::size_t p = cols.size();
  std::vector<double> means(p);
  for (std::size_t j = 0; j < p; ++j) {
    means[j] = mean(cols[j]);
    for (double& v : cols[j]) v -= means[j];
  }
  const double mz = mean(z);
  for (double& v : z) v -= mz;

  std::vector<std::vector<double>> r(p, std::vector<double>(p, 0.0));
  for (std::size_t j = 0; j < p; ++j) {
    const double before = std::sqrt(ip(cols[j], cols[j]));
    for (std::size_t i = 0; i < j; ++i) {
      r[i][j] = ip(cols[i], cols[j]);
      for (std::size_t k = 0; k < n; ++k) cols[j][k] -= r[i][j] * cols[i][k];
    }
    r[j][j] = std::sqrt(ip(cols[j], cols[j]));
    if (!(before > 0.0) || !(r[j][j] > 1e-12 * before))
      throw Error(ErrorCode::kDegenerateFit, "design matrix is rank deficient");
    for (double& v : cols[j]) v /= r[j][j];
  }
  std::vector<double> c(p);
  for (std::size_t j = 0; j < p; ++j) c[j] = ip(cols[j], z);
  for (std::size_t j = p; j-- > 0;) {
    for (std::size_t i = j + 1; i < p; ++i) c[j] -= r[j][i] * c[i];
    c[j] /= r[j][j];
  }
  double log_b = mz;
  for (std::size_t j = 0; j < p; ++j) log_b -= c[j] * means[j];
  return {log_b, c[0], alpha_hint ? *alpha_hint : c[1]};
}

// Mass beyond the last grid point. The last 10% of samples are fitted by
// b x^kappa e^{-alpha x} (plain exponential if that fit is unavailable) and
// the integral closed with the first terms of its asymptotic expansion.
double closing_mass(const TailSamples& f) {
  const std::size_t n = f.grid.size();
  const double last = f.values.back();
  const double x_end = f.grid.back();
  if (last <= 1e-300) return 0.0;
  const std::size_t m = std::max<std::size_t>(2, n / 10);
  std::vector<double> xs, ys;
  for (std::size_t k = n - m; k < n; ++k) {
    if (f.values[k] > 0.0) {
      xs.push_back(f.grid[k]);
      ys.push_back(std::log(f.values[k]));
    }
  }
  if (xs.size() >= 8 && xs.front() > 0.0) {
    try {
      const Coeffs c = least_squares(xs, ys, std::nullopt, false);
      if (c.alpha > 0.0) {
        const double u = c.kappa / (c.alpha * x_end);
        return last / c.alpha * (1.0 + u + u * (c.kappa - 1.0) / (c.alpha * x_end));
      }
    } catch (const Error&) {
    }
  }
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double used = static_cast<double>(xs.size());
  for (std::size_t k = 0; k < xs.size(); ++k) {
    sx += xs[k];
    sy += ys[k];
    sxx += xs[k] * xs[k];
    sxy += xs[k] * ys[k];
  }
  const double denom = used * sxx - sx * sx;
  if (xs.size() < 2 || !(denom > 0.0))
    throw Error(ErrorCode::kInsufficientHorizon, "cannot extrapolate the tail beyond the grid");
  const double slope = (used * sxy - sx * sy) / denom;
  if (!(slope < 0.0)) throw Error(ErrorCode::kInsufficientHorizon, "samples do not decay at the end of the grid");
  return last / -slope;
}

}  // namespace

TailAsymptotic classify_boundary_tail(const Geometry& g, Measure m) {
  if (m == Measure::kNu2) return classify_nu2(g);
  TailAsymptotic t = classify_nu2(g.swapped());
  t.category = category(g).tag;
  return t;
}

TailSamples tail_operator(const TailSamples& f, int n) {
  check_samples(f);
  if (n < 0) throw Error(ErrorCode::kDomainError, "tail operator power must be nonnegative");
  TailSamples cur = f;
  for (int step = 0; step < n; ++step) {
    const std::size_t size = cur.grid.size();
    const double beyond = closing_mass(cur);
    std::vector<double> out(size);
    out[size - 1] = beyond;
    for (std::size_t k = size - 1; k-- > 0;)
      out[k] = out[k + 1] + 0.5 * (cur.grid[k + 1] - cur.grid[k]) * (cur.values[k] + cur.values[k + 1]);
    if (beyond > 1e-6 * out[0])
      throw Error(ErrorCode::kInsufficientHorizon,
                  "extrapolated tail carries " + std::to_string(beyond / out[0]) + " of the mass");
    cur.values = std::move(out);
  }
  return cur;
}

AsymptoteFit fit_asymptote(const TailSamples& f, std::optional<double> alpha_hint, bool inverse_term) {
  check_samples(f);
  if (alpha_hint && !(*alpha_hint > 0.0)) throw Error(ErrorCode::kDomainError, "alpha hint must be positive");
  std::vector<double> xs, ys;
  for (std::size_t k = 0; k < f.grid.size(); ++k) {
    if (f.grid[k] > 0.0 && f.values[k] > 1e-250) {
      xs.push_back(f.grid[k]);
      ys.push_back(std::log(f.values[k]));
    }
  }
  const std::size_t window = static_cast<std::size_t>(std::ceil(0.3 * xs.size()));
  if (window < 50) throw Error(ErrorCode::kDegenerateFit, "fewer than 50 usable samples in the fit window");
  const std::vector<double> wx(xs.end() - window, xs.end());
  const std::vector<double> wy(ys.end() - window, ys.end());
  const Coeffs c = least_squares(wx, wy, alpha_hint, inverse_term);
  if (!(c.alpha > 0.0)) throw Error(ErrorCode::kDegenerateFit, "fitted decay rate is not positive");

  AsymptoteFit fit;
  fit.b = std::exp(c.log_b);
  fit.kappa = c.kappa;
  fit.alpha = c.alpha;
  fit.x_lo = wx.front();
  fit.x_hi = wx.back();
  for (std::size_t k = 0; k < window; ++k) {
    const double model = c.log_b + c.kappa * std::log(wx[k]) - c.alpha * wx[k];
    fit.residual = std::max(fit.residual, std::fabs(std::expm1(model - wy[k])));
  }

  if (!alpha_hint) {
    const std::size_t half = static_cast<std::size_t>(std::ceil(0.15 * xs.size()));
    try {
      const Coeffs s = least_squares({xs.end() - half, xs.end()}, {ys.end() - half, ys.end()}, std::nullopt, inverse_term);
      if (std::fabs(s.alpha - c.alpha) > 0.05 * c.alpha) fit.status = FitStatus::kNonAsymptoticRegime;
    } catch (const Error&) {
      fit.status = FitStatus::kNonAsymptoticRegime;
    }
  }
  return fit;
}

TailSamples synthesize(double b, double kappa, double alpha, double x_lo, double x_hi, int n) {
  if (n < 2 || !(x_hi > x_lo)) throw Error(ErrorCode::kDomainError, "bad synthesis grid");
  TailSamples s;
  s.grid.resize(n);
  s.values.resize(n);
  for (int k = 0; k < n; ++k) {
    const double x = x_lo + (x_hi - x_lo) * (k + 1) / n;
    s.grid[k] = x;
    s.values[k] = b * std::pow(x, kappa) * std::exp(-alpha * x);
  }
  return s;
}

namespace {

TailCheck judge(TailCheck c, const AsymptoteFit& fit, double kappa_tol) {
  c.fit = fit;
  const bool ok = std::fabs(fit.b - c.expected_b) <= c.tolerance * c.expected_b &&
                  std::fabs(fit.kappa - c.expected_kappa) <= kappa_tol &&
                  std::fabs(fit.alpha - c.expected_alpha) <= c.tolerance * c.expected_alpha;
  c.status = ok ? CheckStatus::kVerified : CheckStatus::kFailed;
  return c;
}

// Tail of the density (b / Gamma(s)) x^{s-1} e^{-alpha x} by quadrature.
TailCheck gamma_carrier_check(double b, double alpha, double shape, double tol) {
  const double horizon = 150.0 / alpha;
  const int n = 30000;
  TailSamples density = synthesize(b / std::tgamma(shape), shape - 1.0, alpha, 0.0, horizon, n);
  TailCheck c;
  c.expected_b = b / (alpha * std::tgamma(shape));
  c.expected_kappa = shape - 1.0;
  c.expected_alpha = alpha;
  c.tolerance = tol;
  return judge(c, fit_asymptote(tail_operator(density, 1), std::nullopt, true), 0.05);
}

void check_positive(double b, double alpha) {
  if (!(b > 0.0) || !(alpha > 0.0)) throw Error(ErrorCode::kDomainError, "b and alpha must be positive");
}

}  // namespace

TailCheck verify_tail_equivalence(double b, double kappa, double alpha, int n) {
  check_positive(b, alpha);
  if (n != 1 && n != 2) throw Error(ErrorCode::kDomainError, "n must be 1 or 2");
  const double horizon = 150.0 / alpha;
  const int size = 30000;
  const double h = 1e-3 / alpha;
  auto target = [&](double x) { return b * std::pow(x, kappa) * std::exp(-alpha * x); };

  TailSamples f;
  f.grid.resize(size);
  f.values.resize(size);
  for (int k = 0; k < size; ++k) {
    const double x = horizon * (k + 1) / size;
    f.grid[k] = x;
    f.values[k] = n == 1 ? -(target(x + h) - target(x - h)) / (2.0 * h)
                         : (target(x + h) - 2.0 * target(x) + target(x - h)) / (h * h);
  }
  TailCheck c;
  c.expected_b = std::pow(alpha, n) * b;
  c.expected_kappa = kappa;
  c.expected_alpha = alpha;
  c.tolerance = 0.05;
  return judge(c, fit_asymptote(f, std::nullopt, true), 0.05);
}

TailCheck verify_inversion_k_pole(double b, double alpha, int k) {
  check_positive(b, alpha);
  if (k != 1 && k != 2) throw Error(ErrorCode::kDomainError, "k must be 1 or 2");
  return gamma_carrier_check(b, alpha, k, 0.03);
}

TailCheck verify_inversion_fractional(double b, double alpha, double lambda) {
  check_positive(b, alpha);
  if (!(lambda > -1.0 && lambda <= 1.0) || lambda == 0.0)
    throw Error(ErrorCode::kDomainError, "lambda must lie in (-1, 1] without 0");
  if (lambda < 0.0) {
    TailCheck c;
    c.status = CheckStatus::kNotVerifiable;
    c.expected_b = b / (alpha * std::tgamma(lambda));
    c.expected_kappa = lambda - 1.0;
    c.expected_alpha = alpha;
    c.tolerance = 0.05;
    return c;
  }
  return gamma_carrier_check(b, alpha, lambda, 0.05);
}

}  // namespace srbm2d
