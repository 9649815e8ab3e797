#pragma once

#include <vector>

#include "dwsim/drive.hpp"
#include "dwsim/grid.hpp"
#include "dwsim/material.hpp"

namespace dwsim {

enum class Stepper { rk4, abm4 };

struct SimConfig {
  double length_m = 1.2e-6;
  double dx_m = 2.0e-9;
  // 0 picks half the exchange stability bound, capped at 0.8 ps. An explicit
  // value above the bound is rejected.
  double dt_s = 0.0;
  double t_end_s = 0.0;
  int sample_every = 16;  // steps between recorded samples
  Stepper stepper = Stepper::rk4;
  bool renormalize = true;
  int clamp_cells = 3;      // cells held at +-x at each end
  double wall_x0_m = 0.0;   // initial wall center
  // Damping-only relaxation (alpha = 1, no drive, pins active) run before
  // t = 0 to let the discrete profile equilibrate.
  double settle_time_s = 0.0;
  std::vector<double> snapshot_times_s;
  std::vector<PinningCenter> pins;
  // Optional early exit: stop (status ok, stopped_early) once the wall is
  // more than stop_radius_m from stop_center_m. 0 disables.
  double stop_radius_m = 0.0;
  double stop_center_m = 0.0;
};

enum class RunStatus { ok, wall_destroyed, wall_left_region, diverged };

const char* run_status_name(RunStatus s);

struct WallTrack {
  bool valid = false;      // exactly one sign change of m_x
  int n_crossings = 0;
  double x_m = 0.0;        // interpolated zero of m_x
  double W_m = 0.0;        // tanh-profile width fit
  double max_abs_mz = 0.0; // over the whole wire
};

// Wall readout. W_ref_m sets the fit window (+-6 W_ref around the zero) and
// the width search range; skip_cells excludes clamped end cells.
WallTrack track_wall(const MagnetizationGrid& g, double W_ref_m,
                     int skip_cells = 0);

// Areal energy relative to the uniform state: staggered exchange plus
// easy-axis anisotropy plus local demag. J/m^2.
double wall_energy_J_per_m2(const MaterialParams& mat,
                            const MagnetizationGrid& g);

// Instantaneous dE/dt per unit area, W/m^2: damping loss plus the two
// spin-torque work integrals, evaluated with the full effective field.
double wall_energy_rate_W_per_m2(const MaterialParams& mat,
                                 const MagnetizationGrid& g,
                                 const std::vector<PinningCenter>& pins,
                                 const DriveSample& d);

struct MicromagSeries {
  std::vector<double> t_s;
  std::vector<double> x_m;
  std::vector<double> v_m_per_s;  // symmetric difference of x_m, filled post-run
  std::vector<double> W_m;
  std::vector<double> max_mz;
  std::vector<double> E_J_per_m2;
  std::vector<double> dEdt_W_per_m2;
};

struct Snapshot {
  double t_s = 0.0;
  std::vector<Vec3> m;
};

struct RunResult {
  MicromagSeries series;
  RunStatus status = RunStatus::ok;
  bool stopped_early = false;
  double t_stop_s = 0.0;
  std::vector<Snapshot> snapshots;
  MagnetizationGrid final_state;
};

// Largest stable step for the stiffest exchange mode on this grid.
double exchange_stability_dt_s(const MaterialParams& mat, double dx_m);

// Full 1-D dynamics: local demag, easy-axis anisotropy, exchange, adiabatic
// spin torque. Magnetization direction m(x, t) obeys
//   (1+a^2) dm/dt = -g m x H - g a m x (m x H) + tau + a m x tau,
//   tau = -b_J m x (m x dm/dx),
// with H = H_K m_x ex + (2A/Ms) m'' - 4 pi Ms m_z ez + (H_ext + H_pin) ex.
class MicromagEngine {
 public:
  MicromagEngine(const MaterialParams& mat, const SimConfig& cfg);

  void effective_field(const std::vector<Vec3>& m, double H_ext_Oe,
                       std::vector<Vec3>& H) const;
  void llg_rhs(const std::vector<Vec3>& m, const DriveSample& d,
               std::vector<Vec3>& dmdt) const;

  // Integrates from t = 0 to cfg.t_end_s (after the optional settle phase),
  // recording samples, and stops early if the wall is lost.
  RunResult run(const DriveProgram& drive);

  const MagnetizationGrid& state() const { return grid_; }
  void set_state(const std::vector<Vec3>& m);
  double dt_s() const { return dt_; }
  const SimConfig& config() const { return cfg_; }

 private:
  void apply_clamp();
  void step_rk4(const DriveSample& d, double h);
  // One predictor-corrector step; fhist_ holds the last four derivative
  // evaluations, newest last.
  void step_abm4(const DriveSample& d, double h);
  void renormalize_state();

  MaterialParams mat_;
  SimConfig cfg_;
  MagnetizationGrid grid_;
  double dt_ = 0.0;
  double dx_cm_ = 0.0;
  std::vector<double> pin_field_Oe_;  // per cell, drive-independent
  double max_norm_drift_ = 0.0;       // largest | |m|-1 | seen before renorm

  // scratch buffers; h_ is mutable so the const rhs can reuse it
  mutable std::vector<Vec3> h_;
  std::vector<Vec3> k1_, k2_, k3_, k4_, ytmp_;
  std::vector<std::vector<Vec3>> fhist_;
};

}  // namespace dwsim
