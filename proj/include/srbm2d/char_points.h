#pragma once

#include <array>
#include <vector>

#include "srbm2d/geometry.h"
#include "srbm2d/srbm.h"

namespace srbm2d {

/// Nonzero intersection of the ray gamma_{3-i} = 0 with the ellipse.
Vector2 theta_r(const Srbm& srbm, int i);

/// Ellipse point maximizing coordinate i.
Vector2 theta_max(const Srbm& srbm, int i);

/// The other ellipse point sharing coordinate i with theta_r(i). Returns
/// theta_max(i) when theta_r(i) coincides with it within `tol` relative.
Vector2 theta_r_tilde(const Srbm& srbm, int i, double tol = 1e-9);

/// True when theta_max(i) lies on the closed side gamma_{3-i} <= 0.
bool theta_max_in_boundary_i(const Srbm& srbm, int i);

/// theta_max(i) if it lies on the boundary of Gamma_i, else theta_r(i).
Vector2 theta_gamma(const Srbm& srbm, int i);

/// Characteristic points; index 0 holds the i = 1 point.
struct CharPoints {
  std::array<Vector2, 2> theta_r;
  std::array<Vector2, 2> theta_max;
  std::array<Vector2, 2> theta_r_tilde;
  std::array<Vector2, 2> theta_gamma;
};

CharPoints char_points(const Srbm& srbm, double tol = 1e-9);

/// n >= 8 points on the ellipse, counterclockwise around the center
/// -sigma^{-1} mu, starting at parameter angle 0 of the principal axes.
std::vector<Vector2> ellipse_samples(const Srbm& srbm, int n);

/// Center of the ellipse and the squared "radius" <c, sigma c>.
Vector2 ellipse_center(const Srbm& srbm);

}  // namespace srbm2d
