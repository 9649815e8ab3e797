#include "dwsim/grid.hpp"

#include <cmath>
#include <stdexcept>

namespace dwsim {

MagnetizationGrid initial_neel_wall(const MaterialParams& mat, double length_m,
                                    double dx_m, double x_c_m) {
  mat.validate();
  if (!(dx_m > 0.0) || !(length_m > 0.0)) {
    throw std::invalid_argument("grid length and spacing must be positive");
  }
  const double W0 = derived_scales(mat).W0_m;
  if (length_m < 20.0 * W0) {
    throw std::invalid_argument("wire too short: need at least 20 wall widths");
  }
  const int n = (int)std::llround(length_m / dx_m);
  if (n < 8) throw std::invalid_argument("grid needs at least 8 cells");

  MagnetizationGrid g;
  g.dx_m = dx_m;
  g.x_first_m = -0.5 * length_m + 0.5 * dx_m;
  g.m.resize(n);
  for (int i = 0; i < n; ++i) {
    const double u = (g.x_at(i) - x_c_m) / W0;
    // theta = 2 atan exp(u): mx = -tanh u, my = sech u. Head-to-head,
    // +x on the left, -x on the right, in-plane core.
    g.m[i] = {-std::tanh(u), 1.0 / std::cosh(u), 0.0};
  }
  return g;
}

double pinning_field_Oe(const PinningCenter& pin, double x_m) {
  if (pin.zeta_m <= 0.0) return 0.0;
  const double d = x_m - pin.x0_m;
  if (std::abs(d) >= pin.zeta_m) return 0.0;
  return pin.V0_Oe * d / pin.zeta_m;
}

}  // namespace dwsim
