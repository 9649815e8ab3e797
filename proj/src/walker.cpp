#include "dwsim/walker.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "dwsim/constants.hpp"

namespace dwsim {

double wall_c_of_phi(const MaterialParams& mat, double phi_rad) {
  const double s = std::sin(phi_rad);
  return std::sqrt(mat.Ms / (2.0 * mat.A_ex) *
                   (mat.H_K + 4.0 * kPi * mat.Ms * s * s));
}

double walker_phi_rate(const MaterialParams& mat, double phi_rad,
                       double bJ_cm_per_s, double H_Oe) {
  const double c = wall_c_of_phi(mat, phi_rad);
  const double restoring =
      4.0 * kPi * mat.alpha * mat.gamma * mat.Ms * std::sin(phi_rad) * std::cos(phi_rad);
  return (mat.gamma * H_Oe + mat.alpha * bJ_cm_per_s * c - restoring) /
         (1.0 + mat.alpha * mat.alpha);
}

double walker_velocity_cgs(const MaterialParams& mat, double phi_rad,
                           double bJ_cm_per_s, double H_Oe) {
  const double c = wall_c_of_phi(mat, phi_rad);
  const double drift = mat.gamma *
                       (mat.alpha * H_Oe +
                        4.0 * kPi * mat.Ms * std::sin(phi_rad) * std::cos(phi_rad)) /
                       c;
  return (drift - bJ_cm_per_s) / (1.0 + mat.alpha * mat.alpha);
}

namespace {

// Largest |dphi/dt| the drive can produce, used to pick a safe step.
double walker_rate_scale(const MaterialParams& mat, const DriveProgram& drive,
                         double t_end_s) {
  double b_max = std::abs(drive.at(0.0).bJ_m_per_s);
  double H_max = std::abs(drive.at(0.0).H_ext_Oe);
  for (double t : drive.boundaries()) {
    if (t >= t_end_s) break;
    b_max = std::max(b_max, std::abs(drive.at(t).bJ_m_per_s));
    H_max = std::max(H_max, std::abs(drive.at(t).H_ext_Oe));
  }
  const double c_max = wall_c_of_phi(mat, 0.5 * kPi);
  const double a2 = 1.0 + mat.alpha * mat.alpha;
  return (mat.gamma * H_max + mat.alpha * b_max * 1.0e2 * c_max +
          4.0 * kPi * mat.alpha * mat.gamma * mat.Ms) /
         a2;
}

}  // namespace

WalkerResult integrate_walker(const MaterialParams& mat,
                              const DriveProgram& drive,
                              const WalkerOptions& opt) {
  mat.validate();
  if (!(opt.t_end_s > 0.0)) throw std::invalid_argument("t_end must be positive");
  if (opt.sample_stride < 1) throw std::invalid_argument("sample_stride must be >= 1");

  double dt = opt.dt_s;
  if (dt <= 0.0) {
    dt = std::min(0.8e-12, 0.02 / walker_rate_scale(mat, drive, opt.t_end_s));
  }
  dt = std::min(dt, opt.t_end_s / 10.0);

  // Segment ends: every drive breakpoint inside the run, then t_end.
  std::vector<double> ends;
  for (double t : drive.boundaries()) {
    if (t > 0.0 && t < opt.t_end_s) ends.push_back(t);
  }
  ends.push_back(opt.t_end_s);

  const double steady_tol =
      1.0e-4 * 4.0 * kPi * mat.alpha * mat.gamma * mat.Ms /
      (1.0 + mat.alpha * mat.alpha);

  WalkerResult res;
  double phi = opt.phi0_rad;
  double x = opt.x0_m * 1.0e2;  // cm
  double t = 0.0;
  int steady_count = 0;
  long step_index = 0;

  auto push_sample = [&](double b_cgs, double H) {
    res.series.t_s.push_back(t);
    res.series.phi_rad.push_back(phi);
    res.series.W_m.push_back(1.0e-2 / wall_c_of_phi(mat, phi));
    res.series.v_m_per_s.push_back(1.0e-2 *
                                   walker_velocity_cgs(mat, phi, b_cgs, H));
    res.series.x_m.push_back(x * 1.0e-2);
  };

  {
    const DriveSample d0 = drive.at(0.0);
    push_sample(d0.bJ_m_per_s * 1.0e2, d0.H_ext_Oe);
  }

  double seg_start = 0.0;
  for (size_t si = 0; si < ends.size(); ++si) {
    const double seg_end = ends[si];
    const bool final_segment = (si + 1 == ends.size());
    const DriveSample d = drive.at(seg_start);
    const double b = d.bJ_m_per_s * 1.0e2;  // cm/s
    const double H = d.H_ext_Oe;

    const long n = std::max<long>(1, (long)std::ceil((seg_end - seg_start) / dt - 1e-9));
    const double h = (seg_end - seg_start) / (double)n;

    for (long i = 0; i < n; ++i) {
      // RK4 on (phi, x). The rates depend on phi only, not on x or t.
      const double k1p = walker_phi_rate(mat, phi, b, H);
      const double k1x = walker_velocity_cgs(mat, phi, b, H);
      const double k2p = walker_phi_rate(mat, phi + 0.5 * h * k1p, b, H);
      const double k2x = walker_velocity_cgs(mat, phi + 0.5 * h * k1p, b, H);
      const double k3p = walker_phi_rate(mat, phi + 0.5 * h * k2p, b, H);
      const double k3x = walker_velocity_cgs(mat, phi + 0.5 * h * k2p, b, H);
      const double k4p = walker_phi_rate(mat, phi + h * k3p, b, H);
      const double k4x = walker_velocity_cgs(mat, phi + h * k3p, b, H);
      phi += h / 6.0 * (k1p + 2.0 * k2p + 2.0 * k3p + k4p);
      x += h / 6.0 * (k1x + 2.0 * k2x + 2.0 * k3x + k4x);
      t = seg_start + (double)(i + 1) * h;
      ++step_index;

      const double rate = walker_phi_rate(mat, phi, b, H);
      if (final_segment && std::abs(rate) < steady_tol) {
        if (++steady_count == 100 && !res.reached_steady) {
          res.reached_steady = true;
          res.t_steady_s = t;
        }
      } else {
        steady_count = 0;
      }

      if (step_index % opt.sample_stride == 0 || i + 1 == n) {
        push_sample(b, H);
      }
    }
    seg_start = seg_end;
  }

  res.phi_final_rad = phi;
  res.x_final_m = x * 1.0e-2;
  {
    const DriveSample d = drive.at(opt.t_end_s);
    res.v_final_m_per_s =
        1.0e-2 * walker_velocity_cgs(mat, phi, d.bJ_m_per_s * 1.0e2, d.H_ext_Oe);
  }
  return res;
}

WalkerFixedPoint walker_fixed_point(const MaterialParams& mat,
                                    double bJ_m_per_s, double H_ext_Oe) {
  mat.validate();
  const double b = bJ_m_per_s * 1.0e2;
  const double H = H_ext_Oe;
  const DerivedScales sc = derived_scales(mat);

  WalkerFixedPoint fp;
  auto fill = [&](double phi) {
    fp.exists = true;
    fp.phi_rad = phi;
    const double c = wall_c_of_phi(mat, phi);
    fp.c_per_m = c * 1.0e2;
    fp.W_m = 1.0e-2 / c;
    fp.width_ratio = (sc.c0_per_m * 1.0e-2) / c;
    fp.v_m_per_s = 1.0e-2 * walker_velocity_cgs(mat, phi, b, H);
    return fp;
  };

  const double r0 = walker_phi_rate(mat, 0.0, b, H);
  if (r0 == 0.0) return fill(0.0);
  const double dir = r0 > 0.0 ? 1.0 : -1.0;

  // March toward the first tilt where dphi/dt flips sign; that zero is the
  // stable stationary point. No flip by pi/2 means the drive overwhelms the
  // restoring torque and the wall cannot hold a steady tilt.
  const int n_scan = 4096;
  double lo = 0.0;
  double hi = 0.0;
  bool bracketed = false;
  for (int k = 1; k <= n_scan; ++k) {
    const double phi = dir * 0.5 * kPi * (double)k / n_scan;
    if (walker_phi_rate(mat, phi, b, H) * dir <= 0.0) {
      hi = phi;
      lo = dir * 0.5 * kPi * (double)(k - 1) / n_scan;
      bracketed = true;
      break;
    }
  }
  if (!bracketed) return fp;

  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid == lo || mid == hi) break;
    if (walker_phi_rate(mat, mid, b, H) * dir > 0.0) lo = mid;
    else hi = mid;
  }
  return fill(0.5 * (lo + hi));
}

double walker_x_max_m(const MaterialParams& mat, double bJ_m_per_s) {
  const WalkerFixedPoint fp = walker_fixed_point(mat, bJ_m_per_s, 0.0);
  if (!fp.exists) {
    throw std::domain_error("no stationary tilt: torque exceeds critical");
  }
  // x_max = -int_0^phi_inf dphi / (alpha c(phi)), composite Simpson.
  const int n = 2000;  // even
  const double h = fp.phi_rad / n;
  double sum = 1.0 / wall_c_of_phi(mat, 0.0) + 1.0 / wall_c_of_phi(mat, fp.phi_rad);
  for (int i = 1; i < n; ++i) {
    const double w = (i % 2 == 1) ? 4.0 : 2.0;
    sum += w / wall_c_of_phi(mat, i * h);
  }
  const double integral = sum * h / 3.0;  // cm
  return -integral / mat.alpha * 1.0e-2;
}

double small_torque_phi_rad(const MaterialParams& mat, double bJ_m_per_s) {
  const DerivedScales sc = derived_scales(mat);
  const double W0 = sc.W0_m * 1.0e2;
  return bJ_m_per_s * 1.0e2 / (4.0 * kPi * mat.gamma * mat.Ms * W0);
}

double small_torque_x_max_m(const MaterialParams& mat, double bJ_m_per_s) {
  return -bJ_m_per_s * 1.0e2 / (4.0 * kPi * mat.alpha * mat.gamma * mat.Ms) * 1.0e-2;
}

double small_torque_width_ratio(const MaterialParams& mat, double bJ_m_per_s) {
  const DerivedScales sc = derived_scales(mat);
  const double W0 = sc.W0_m * 1.0e2;
  const double b = bJ_m_per_s * 1.0e2;
  return 1.0 - b * b /
                   (2.0 * W0 * W0 * 4.0 * kPi * mat.Ms * mat.H_K * mat.gamma *
                    mat.gamma);
}

double wall_energy_delta_J_per_m2(const MaterialParams& mat, double bJ_m_per_s) {
  const WalkerFixedPoint fp = walker_fixed_point(mat, bJ_m_per_s, 0.0);
  if (!fp.exists) {
    throw std::domain_error("no stationary tilt: torque exceeds critical");
  }
  const DerivedScales sc = derived_scales(mat);
  const double c0 = sc.c0_per_m * 1.0e-2;
  const double c1 = fp.c_per_m * 1.0e-2;
  // Wall energy is 4 A c exactly for the rigid profile; erg/cm^2 -> J/m^2.
  return 4.0 * mat.A_ex * (c1 - c0) * 1.0e-3;
}

double wall_energy_delta_quadratic_J_per_m2(const MaterialParams& mat,
                                            double bJ_m_per_s) {
  const DerivedScales sc = derived_scales(mat);
  return 0.5 * sc.L_w_J_s2_per_m4 * bJ_m_per_s * bJ_m_per_s;
}

}  // namespace dwsim
