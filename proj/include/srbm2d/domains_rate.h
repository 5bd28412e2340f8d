#pragma once

#include <array>
#include <string_view>

#include "srbm2d/char_points.h"
#include "srbm2d/srbm.h"

namespace srbm2d {

inline constexpr double kDefaultTol = 1e-9;

/// A validated instance together with its characteristic points. `tol` is
/// the relative tolerance used for every equality-snapping decision.
struct Geometry {
  Srbm srbm;
  double tol;
  CharPoints points;

  explicit Geometry(const Srbm& s, double snap_tol = kDefaultTol);

  const Vector2& theta_r(int i) const { return points.theta_r[i - 1]; }
  const Vector2& theta_max(int i) const { return points.theta_max[i - 1]; }
  const Vector2& theta_r_tilde(int i) const { return points.theta_r_tilde[i - 1]; }
  const Vector2& theta_gamma(int i) const { return points.theta_gamma[i - 1]; }
  bool theta_max_in_boundary(int i) const { return in_boundary_[i - 1]; }

  /// Geometry of the coordinate-swapped instance.
  Geometry swapped() const;

 private:
  Geometry(const Srbm& s, double snap_tol, const CharPoints& cp, std::array<bool, 2> in_boundary);
  std::array<bool, 2> in_boundary_{};
};

enum class Category { kI, kII, kIII };
std::string_view to_string(Category c);

struct CategoryResult {
  Category tag = Category::kI;
  /// theta^(1,Gamma) == theta^(2,Gamma): both II and III hold, II reported.
  bool tie = false;
};

/// Throws Error(kUnclassifiable) when none of the three orders holds.
CategoryResult category(const Geometry& g);

enum class DomainCase { kBoxBelowTilde, kGammaMaxCappedAtTilde, kGammaMax };
std::string_view to_string(DomainCase c);
DomainCase domain_case(const Geometry& g, int i);

struct Tau {
  Vector2 tau;
  bool tau_in_gamma = false;
};
Tau tau(const Geometry& g);

/// Upper boundary of Gamma_max above abscissa x; -infinity when
/// x >= theta^(1,max)_1.
double gamma_max_upper(const Geometry& g, double x);
bool in_gamma_max(const Geometry& g, Vector2 theta);
bool in_domain_d_i(const Geometry& g, int i, Vector2 theta);
/// Membership in {theta in Gamma_max; theta < tau}.
bool in_domain_d(const Geometry& g, Vector2 theta);

struct SupResult {
  double value = 0.0;
  Vector2 argmax;
};

/// sup of <v, theta> over the ellipse, attained where the normal is parallel to v.
SupResult sup_over_ellipse(const Srbm& s, Vector2 v);
/// sup of <v, theta> over the closure of {theta in Gamma_max; theta < tau}.
SupResult sup_over_domain(const Geometry& g, Vector2 v);

enum class RateCase {
  kTildeBox,            // domain is the box below theta-tilde
  kTildeBelowNormal,    // v below or on the normal at theta-tilde
  kEllipseAboveNormal,  // v above the normal at theta-tilde
  kEllipseNonReflective,
};
std::string_view to_string(RateCase c);

struct RateComponent {
  double value = 0.0;
  Vector2 maximizer;
  RateCase case_fired = RateCase::kTildeBox;
};

/// I^(i)(v) = sup of <v, theta> over D^(i), by the four-way case split.
RateComponent rate_i(const Geometry& g, int i, Vector2 v);

struct RateResult {
  double value = 0.0;
  double i1 = 0.0;
  double i2 = 0.0;
  Vector2 maximizer;
  std::array<RateCase, 2> case_fired{};
};

/// I(v) = min(I^(1)(v), I^(2)(v)). Cross-checked against the closed form in
/// terms of tau; throws Error(kInconsistentCriteria) if the two disagree.
RateResult rate(const Geometry& g, Vector2 v);

/// The tau-based closed form used by the cross-check: sup over D when tau is
/// outside Gamma; otherwise min over the theta-tilde points (Category I) or
/// <v, tau> (Categories II, III).
double rate_via_tau(const Geometry& g, Vector2 v);

}  // namespace srbm2d
