#include "kappa_cells.h"

#include <cmath>
#include <stdexcept>

#include "instances.h"

namespace srbm2d::testing {

std::vector<KappaCell> kappa_cells() {
  const Matrix2 sigma = Matrix2::identity();
  const Vector2 mu{-1, -1};
  const double r2 = std::sqrt(2.0);
  const double h = std::sqrt(2.0 - 0.25);  // half chord at height 0.5 or 1.5

  const Vector2 right_max{1 + r2, 1};
  const Vector2 upper_right = ellipse_point(sigma, mu, 0.6);  // above theta^(1,max)
  const Vector2 top{0, 2};
  const Vector2 low_left{1 - h, 0.5};
  const Vector2 mid_left{1 - r2, 1};

  struct Spec {
    const char* name;
    Vector2 t1r, t2r;
    BoundaryCase bc;
    Category cat;
    bool r_is_max, hits;
    double kappa;
  };
  using B = BoundaryCase;
  using C = Category;
  const Spec specs[] = {
      {"interior/I", {2, 0}, top, B::kInterior, C::kI, false, false, 0.0},
      {"interior/II", upper_right, low_left, B::kInterior, C::kII, false, false, 0.0},
      {"interior/II tau1 = theta_r_1 on the upper arc", {1 + h, 1.5}, low_left, B::kInterior, C::kII, false, false,
       0.0},
      {"interior/II tau = theta_r", {1 + h, 0.5}, low_left, B::kInterior, C::kII, false, true, 1.0},
      {"interior/III", {0.5, 1 - h}, {1.5, 1 + h}, B::kInterior, C::kIII, false, false, 0.0},
      {"boundary/I theta_r = theta_max", right_max, top, B::kBoundary, C::kI, true, false, -0.5},
      {"boundary/I", upper_right, top, B::kBoundary, C::kI, false, false, -1.5},
      {"boundary/II theta_r = theta_max", right_max, mid_left, B::kBoundary, C::kII, true, true, 0.0},
      {"boundary/II", upper_right, mid_left, B::kBoundary, C::kII, false, false, -0.5},
  };
  std::vector<KappaCell> cells;
  for (const Spec& s : specs) {
    const auto d = instance_from_rays(sigma, mu, s.t1r, s.t2r);
    if (!d) throw std::logic_error(std::string("kappa cell instance is not valid: ") + s.name);
    cells.push_back({s.name, *d, s.bc, s.cat, s.r_is_max, s.hits, s.kappa});
  }
  return cells;
}

}  // namespace srbm2d::testing
