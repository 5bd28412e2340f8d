#pragma once

#include <optional>
#include <string_view>
#include <vector>

#include "srbm2d/domains_rate.h"

namespace srbm2d {

enum class Measure { kNu1, kNu2 };
std::string_view to_string(Measure m);

enum class BoundaryCase { kInterior, kBoundary };
std::string_view to_string(BoundaryCase c);

struct TailAsymptotic {
  double decay = 0.0;
  double kappa = 0.0;
  Category category = Category::kI;
  BoundaryCase boundary_case = BoundaryCase::kInterior;
  /// Snapped equalities that selected the table cell (in the frame of nu_2).
  bool theta_r_is_max = false;
  bool tau_hits_theta_r = false;
};

/// Power kappa of the nu_2 tail for one cell of the classification table.
/// Throws Error(kImpossibleCase) for Category III on the boundary.
double kappa_for_cell(BoundaryCase bc, Category cat, bool theta_r_is_max, bool tau_hits_theta_r);

/// Exact tail class of nu_1 or nu_2. nu_1 is classified on the swapped
/// instance; the reported category is that of the original instance.
TailAsymptotic classify_boundary_tail(const Geometry& g, Measure m);

struct TailSamples {
  std::vector<double> grid;
  std::vector<double> values;
};

/// n-fold tail integral x -> int_x^inf f by right-to-left trapezoids, with
/// the mass beyond the grid closed by an exponential fitted to the last 10%
/// of samples. Throws Error(kInsufficientHorizon) when that closing mass
/// exceeds 1e-6 of the total.
TailSamples tail_operator(const TailSamples& f, int n);

enum class FitStatus { kOk, kNonAsymptoticRegime };
std::string_view to_string(FitStatus s);

struct AsymptoteFit {
  double b = 0.0;
  double kappa = 0.0;
  double alpha = 0.0;
  double x_lo = 0.0;
  double x_hi = 0.0;
  /// Max relative deviation of b x^kappa e^{-alpha x} from the samples in the window.
  double residual = 0.0;
  FitStatus status = FitStatus::kOk;
};

/// Least squares of log f on [1, log x, -x] over the last 30% of usable
/// samples (x > 0, f > 1e-250). With alpha_hint only (b, kappa) are fitted.
/// inverse_term adds a 1/x column that absorbs the first correction term of
/// b x^kappa e^{-alpha x} (1 + c/x + ...); the reported residual and triple
/// are unaffected by c otherwise.
AsymptoteFit fit_asymptote(const TailSamples& f, std::optional<double> alpha_hint = std::nullopt,
                           bool inverse_term = false);

/// Samples of b x^kappa e^{-alpha x} on an even grid over (x_lo, x_hi].
TailSamples synthesize(double b, double kappa, double alpha, double x_lo, double x_hi, int n);

enum class CheckStatus { kVerified, kFailed, kNotVerifiable };
std::string_view to_string(CheckStatus s);

struct TailCheck {
  CheckStatus status = CheckStatus::kFailed;
  double expected_b = 0.0;
  double expected_kappa = 0.0;
  double expected_alpha = 0.0;
  std::optional<AsymptoteFit> fit;
  double tolerance = 0.0;
};

/// f = (-1)^n d^n/dx^n of b x^kappa e^{-alpha x}; expects f ~ alpha^n b x^kappa e^{-alpha x}.
TailCheck verify_tail_equivalence(double b, double kappa, double alpha, int n);
/// Density (b / Gamma(k)) x^{k-1} e^{-alpha x}; expects its tail ~ (b / (alpha Gamma(k))) x^{k-1} e^{-alpha x}.
TailCheck verify_inversion_k_pole(double b, double alpha, int k);
/// Same with real lambda in (0, 1]; lambda < 0 reports kNotVerifiable.
TailCheck verify_inversion_fractional(double b, double alpha, double lambda);

}  // namespace srbm2d
