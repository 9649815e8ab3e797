#pragma once

#include <vector>

#include "dwsim/material.hpp"
#include "dwsim/vec3.hpp"

namespace dwsim {

// 1-D chain of cell-centered unit magnetization vectors along x.
struct MagnetizationGrid {
  std::vector<Vec3> m;
  double dx_m = 0.0;
  double x_first_m = 0.0;  // center of cell 0

  int size() const { return (int)m.size(); }
  double x_at(int i) const { return x_first_m + i * dx_m; }
  double length_m() const { return m.size() * dx_m; }
};

// Head-to-head wall centered at x_c: theta(x) = 2 atan exp((x - x_c)/W0),
// m = (-tanh u, sech u, 0). The wire spans [-length/2, +length/2].
// Requires length >= 20 W0 so the tails are flat at the ends.
MagnetizationGrid initial_neel_wall(const MaterialParams& mat, double length_m,
                                    double dx_m, double x_c_m);

// Parabolic-potential pinning center: easy-axis field ramp
//   H_pin_x(x) = V0 (x - x0)/zeta   for |x - x0| < zeta, else 0.
// V0 < 0 attracts the head-to-head wall toward x0.
struct PinningCenter {
  double V0_Oe = 0.0;
  double zeta_m = 0.0;
  double x0_m = 0.0;
};

double pinning_field_Oe(const PinningCenter& pin, double x_m);

}  // namespace dwsim
