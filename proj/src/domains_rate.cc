#include "srbm2d/domains_rate.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "srbm2d/errors.h"

namespace srbm2d {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double scale_of(Vector2 a, Vector2 b) {
  return 1.0 + std::max({std::fabs(a.x1), std::fabs(a.x2), std::fabs(b.x1), std::fabs(b.x2)});
}

void check_direction(Vector2 v) {
  if (!(v.x1 >= 0.0) || !(v.x2 >= 0.0))
    throw Error(ErrorCode::kDomainError, "direction must lie in the nonnegative quadrant");
  if (v.x1 == 0.0 && v.x2 == 0.0) throw Error(ErrorCode::kZeroDirection, "direction is zero");
}

// Largest theta_2 with gamma(x, theta_2) = 0; the vertex when x sits at the
// tangency (a slightly negative discriminant from rounding).
double upper_arc(const Srbm& s, double x) {
  const LineQuadratic q = s.restrict_gamma({x, 0.0}, {0.0, 1.0});
  if (auto roots = quadratic_roots(q.a, q.b, q.c)) return (*roots)[1];
  return -q.b / (2.0 * q.a);
}

// Largest theta_1 with gamma(theta_1, y) = 0.
double right_arc(const Srbm& s, double y) {
  const LineQuadratic q = s.restrict_gamma({0.0, y}, {1.0, 0.0});
  if (auto roots = quadratic_roots(q.a, q.b, q.c)) return (*roots)[1];
  return -q.b / (2.0 * q.a);
}

// Closure of the upper boundary of Gamma_max on (-inf, theta^(1,max)_1].
double gamma_max_upper_closed(const Geometry& g, double x) {
  const Vector2& top = g.theta_max(2);
  const Vector2& right = g.theta_max(1);
  if (x <= top.x1) return top.x2;
  if (x >= right.x1) return right.x2;
  return upper_arc(g.srbm, x);
}

RateComponent rate_1(const Geometry& g, Vector2 v) {
  const Srbm& s = g.srbm;
  const Vector2& tilde = g.theta_r_tilde(1);
  switch (domain_case(g, 1)) {
    case DomainCase::kGammaMax: {
      const SupResult e = sup_over_ellipse(s, v);
      return {e.value, e.argmax, RateCase::kEllipseNonReflective};
    }
    case DomainCase::kBoxBelowTilde:
      return {dot(v, tilde), tilde, RateCase::kTildeBox};
    case DomainCase::kGammaMaxCappedAtTilde:
      break;
  }
  // "v below or on the normal" is a nonpositive cross product n x v.
  if (cross(s.normal(tilde), v) <= 0.0) return {dot(v, tilde), tilde, RateCase::kTildeBelowNormal};
  const SupResult e = sup_over_ellipse(s, v);
  return {e.value, e.argmax, RateCase::kEllipseAboveNormal};
}

}  // namespace

Geometry::Geometry(const Srbm& s, double snap_tol)
    : srbm(s), tol(snap_tol), points(char_points(s, snap_tol)) {
  for (int i = 1; i <= 2; ++i) in_boundary_[i - 1] = theta_max_in_boundary_i(s, i);
}

Geometry::Geometry(const Srbm& s, double snap_tol, const CharPoints& cp,
                   std::array<bool, 2> in_boundary)
    : srbm(s), tol(snap_tol), points(cp), in_boundary_(in_boundary) {}

Geometry Geometry::swapped() const {
  auto swap_pair = [](const std::array<Vector2, 2>& a) {
    return std::array<Vector2, 2>{srbm2d::swapped(a[1]), srbm2d::swapped(a[0])};
  };
  CharPoints cp;
  cp.theta_r = swap_pair(points.theta_r);
  cp.theta_max = swap_pair(points.theta_max);
  cp.theta_r_tilde = swap_pair(points.theta_r_tilde);
  cp.theta_gamma = swap_pair(points.theta_gamma);
  return Geometry(srbm.swapped(), tol, cp, {in_boundary_[1], in_boundary_[0]});
}

std::string_view to_string(Category c) {
  switch (c) {
    case Category::kI: return "I";
    case Category::kII: return "II";
    case Category::kIII: return "III";
  }
  return "?";
}

std::string_view to_string(DomainCase c) {
  switch (c) {
    case DomainCase::kBoxBelowTilde: return "BoxBelowTilde";
    case DomainCase::kGammaMaxCappedAtTilde: return "GammaMaxCappedAtTilde";
    case DomainCase::kGammaMax: return "GammaMax";
  }
  return "?";
}

std::string_view to_string(RateCase c) {
  switch (c) {
    case RateCase::kTildeBox: return "tilde-box";
    case RateCase::kTildeBelowNormal: return "tilde-below-normal";
    case RateCase::kEllipseAboveNormal: return "ellipse-above-normal";
    case RateCase::kEllipseNonReflective: return "ellipse-nonreflective";
  }
  return "?";
}

CategoryResult category(const Geometry& g) {
  const Vector2& a = g.theta_gamma(1);
  const Vector2& b = g.theta_gamma(2);
  const double eps = g.tol * scale_of(a, b);
  auto lt = [eps](double x, double y) { return x < y - eps; };
  auto le = [eps](double x, double y) { return x <= y + eps; };

  if (lt(b.x1, a.x1) && lt(a.x2, b.x2)) return {Category::kI, false};
  const bool ii = le(b.x1, a.x1) && le(b.x2, a.x2);
  const bool iii = le(a.x1, b.x1) && le(a.x2, b.x2);
  if (ii) return {Category::kII, iii};
  if (iii) return {Category::kIII, false};
  throw Error(ErrorCode::kUnclassifiable, "theta^(i,Gamma) points satisfy none of the category orders");
}

DomainCase domain_case(const Geometry& g, int i) {
  check_index(i);
  if (i == 2) return domain_case(g.swapped(), 1);
  if (g.theta_max_in_boundary(1)) return DomainCase::kGammaMax;
  if (g.theta_r(1).x1 <= g.theta_max(2).x1) return DomainCase::kBoxBelowTilde;
  return DomainCase::kGammaMaxCappedAtTilde;
}

Tau tau(const Geometry& g) {
  Tau t;
  switch (category(g).tag) {
    case Category::kI: t.tau = {g.theta_gamma(1).x1, g.theta_gamma(2).x2}; break;
    case Category::kII: t.tau = g.theta_r_tilde(2); break;
    case Category::kIII: t.tau = g.theta_r_tilde(1); break;
  }
  t.tau_in_gamma = g.srbm.gamma(t.tau) > 0.0;
  return t;
}

double gamma_max_upper(const Geometry& g, double x) {
  if (x >= g.theta_max(1).x1) return -kInf;
  return gamma_max_upper_closed(g, x);
}

bool in_gamma_max(const Geometry& g, Vector2 theta) {
  return theta.x1 < g.theta_max(1).x1 && theta.x2 < gamma_max_upper(g, theta.x1);
}

bool in_domain_d_i(const Geometry& g, int i, Vector2 theta) {
  check_index(i);
  if (i == 2) return in_domain_d_i(g.swapped(), 1, swapped(theta));
  const Vector2& tilde = g.theta_r_tilde(1);
  switch (domain_case(g, 1)) {
    case DomainCase::kBoxBelowTilde: return strictly_less(theta, tilde);
    case DomainCase::kGammaMaxCappedAtTilde: return in_gamma_max(g, theta) && theta.x1 < tilde.x1;
    case DomainCase::kGammaMax: return in_gamma_max(g, theta);
  }
  return false;
}

bool in_domain_d(const Geometry& g, Vector2 theta) {
  return in_gamma_max(g, theta) && strictly_less(theta, tau(g).tau);
}

SupResult sup_over_ellipse(const Srbm& s, Vector2 v) {
  if (v.x1 == 0.0 && v.x2 == 0.0) throw Error(ErrorCode::kZeroDirection, "direction is zero");
  const Matrix2& si = s.sigma_inv();
  const Vector2& mu = s.mu();
  const double mm = dot(mu, si * mu);
  const double vv = dot(v, si * v);
  const double alpha = std::sqrt(mm / vv);
  SupResult r;
  r.value = std::sqrt(mm * vv) - dot(mu, si * v);
  r.argmax = si * (alpha * v - mu);
  return r;
}

SupResult sup_over_domain(const Geometry& g, Vector2 v) {
  check_direction(v);
  const Vector2 cap = tau(g).tau;
  const Vector2& right = g.theta_max(1);
  const Vector2& top = g.theta_max(2);
  const double x_hi = std::min(cap.x1, right.x1);

  auto point_at = [&](double x) {
    return Vector2{x, std::min(cap.x2, gamma_max_upper_closed(g, x))};
  };
  // The objective is concave along the frontier, so its maximum is at the
  // right end, at the kink where the cap meets the arc, at the tangency
  // point, or (for vertical v) anywhere on the flat top.
  std::vector<Vector2> candidates{point_at(x_hi), point_at(std::min(top.x1, x_hi))};
  if (cap.x2 >= right.x2 && cap.x2 <= top.x2) {
    const double xc = right_arc(g.srbm, cap.x2);
    if (xc <= x_hi) candidates.push_back(point_at(xc));
  }
  const SupResult e = sup_over_ellipse(g.srbm, v);
  if (e.argmax.x1 <= x_hi && e.argmax.x2 <= cap.x2) candidates.push_back(e.argmax);

  SupResult best{-kInf, {}};
  for (const Vector2& c : candidates) {
    const double val = dot(v, c);
    if (val > best.value) best = {val, c};
  }
  return best;
}

RateComponent rate_i(const Geometry& g, int i, Vector2 v) {
  check_index(i);
  check_direction(v);
  if (i == 1) return rate_1(g, v);
  RateComponent c = rate_1(g.swapped(), swapped(v));
  c.maximizer = swapped(c.maximizer);
  return c;
}

double rate_via_tau(const Geometry& g, Vector2 v) {
  check_direction(v);
  const Tau t = tau(g);
  if (!t.tau_in_gamma) return sup_over_domain(g, v).value;
  // For Categories II and III, D is the box below tau, so its corner is
  // the maximizer; the min over both tilde points only holds for Category I.
  if (category(g).tag != Category::kI) return dot(v, t.tau);
  return std::min(dot(v, g.theta_r_tilde(1)), dot(v, g.theta_r_tilde(2)));
}

RateResult rate(const Geometry& g, Vector2 v) {
  const RateComponent c1 = rate_i(g, 1, v);
  const RateComponent c2 = rate_i(g, 2, v);
  RateResult r;
  r.i1 = c1.value;
  r.i2 = c2.value;
  r.value = std::min(c1.value, c2.value);
  r.maximizer = c1.value <= c2.value ? c1.maximizer : c2.maximizer;
  r.case_fired = {c1.case_fired, c2.case_fired};

  const double alt = rate_via_tau(g, v);
  const double tol = std::max(1e-9, 10.0 * g.tol);
  if (std::fabs(alt - r.value) > tol * std::max(1.0, std::fabs(r.value))) {
    throw Error(ErrorCode::kInconsistentCriteria,
                "rate " + std::to_string(r.value) + " disagrees with tau form " + std::to_string(alt));
  }
  return r;
}

}  // namespace srbm2d
