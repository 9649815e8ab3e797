#pragma once

#include <vector>

#include "dwsim/drive.hpp"
#include "dwsim/material.hpp"

namespace dwsim {

// Reduced wall model: the magnetization is assumed to keep the rigid
// tanh/sech wall profile, with the tilt angle phi out of the easy plane and
// the wall position x as the only degrees of freedom. The wall width reacts
// instantaneously to the tilt through the width constraint
//   c(phi)^2 = (Ms/2A) (H_K + 4 pi Ms sin^2 phi),  W = 1/c.

// Inverse width c(phi) in 1/cm for a tilt in radians.
double wall_c_of_phi(const MaterialParams& mat, double phi_rad);

// Instantaneous collective rates, all Gaussian internally:
//   dphi/dt = [gamma H + alpha b c(phi) - 4 pi alpha gamma Ms sin cos] / (1+a^2)
//   v       = [gamma (alpha H + 4 pi Ms sin cos) / c(phi) - b] / (1+a^2)
// b in cm/s, H in Oe, v in cm/s. The pair obeys alpha c v + dphi/dt = gamma H.
double walker_phi_rate(const MaterialParams& mat, double phi_rad,
                       double bJ_cm_per_s, double H_Oe);
double walker_velocity_cgs(const MaterialParams& mat, double phi_rad,
                           double bJ_cm_per_s, double H_Oe);

struct WalkerSeries {
  std::vector<double> t_s;
  std::vector<double> phi_rad;
  std::vector<double> W_m;
  std::vector<double> v_m_per_s;
  std::vector<double> x_m;
};

struct WalkerOptions {
  double t_end_s = 0.0;
  double dt_s = 0.0;       // 0 -> picked from the fastest rate, capped at 0.8 ps
  int sample_stride = 1;   // keep every n-th step in the series
  double phi0_rad = 0.0;
  double x0_m = 0.0;
};

struct WalkerResult {
  WalkerSeries series;
  // Steady state means |dphi/dt| stayed below 1e-4 of the restoring-rate
  // scale for 100 consecutive steps inside the final drive segment.
  bool reached_steady = false;
  double t_steady_s = 0.0;
  double phi_final_rad = 0.0;
  double v_final_m_per_s = 0.0;
  double x_final_m = 0.0;
};

// RK4 on (phi, x); steps land exactly on drive breakpoints.
WalkerResult integrate_walker(const MaterialParams& mat,
                              const DriveProgram& drive,
                              const WalkerOptions& opt);

// Stationary tilt under constant drive, if one exists. Found by scanning
// dphi/dt away from zero tilt in the direction it initially moves and
// bisecting the first sign change.
struct WalkerFixedPoint {
  bool exists = false;
  double phi_rad = 0.0;
  double c_per_m = 0.0;
  double W_m = 0.0;
  double width_ratio = 0.0;      // W(phi)/W0, < 1 once the wall tilts
  double v_m_per_s = 0.0;        // steady velocity; zero when H = 0
};

WalkerFixedPoint walker_fixed_point(const MaterialParams& mat,
                                    double bJ_m_per_s, double H_ext_Oe);

// Zero-field stopping distance: x_max = -integral_0^phi_inf dphi/(alpha c).
// Simpson quadrature on the exact integrand. Requires a fixed point.
double walker_x_max_m(const MaterialParams& mat, double bJ_m_per_s);

// Leading-order forms, valid for |b_J| well below critical.
double small_torque_phi_rad(const MaterialParams& mat, double bJ_m_per_s);
double small_torque_x_max_m(const MaterialParams& mat, double bJ_m_per_s);
double small_torque_width_ratio(const MaterialParams& mat, double bJ_m_per_s);

// Stored wall energy above rest at the stationary tilt, per unit area.
// Exact: 4A (c(phi_inf) - c0). Quadratic form: L_w b^2 / 2.
double wall_energy_delta_J_per_m2(const MaterialParams& mat, double bJ_m_per_s);
double wall_energy_delta_quadratic_J_per_m2(const MaterialParams& mat,
                                            double bJ_m_per_s);

}  // namespace dwsim
