#pragma once

#include <string>
#include <vector>

#include "dwsim/config.hpp"
#include "dwsim/drive.hpp"
#include "dwsim/material.hpp"
#include "dwsim/micromag.hpp"
#include "dwsim/walker.hpp"

namespace dwsim {

enum class EngineSel { walker, micromag, both };

// A complete run description: material, wire, drive, which engine(s).
struct Scenario {
  std::string name;
  MaterialParams material;
  SimConfig sim;
  DriveProgram drive;
  EngineSel engine = EngineSel::both;
  int walker_sample_stride = 1;
};

// db may be null when the scenario defines the material inline; a [material]
// section with name only (plus optional overrides) needs the database.
Scenario load_scenario(const std::string& path,
                       const std::vector<MaterialParams>* db);

struct ScenarioResult {
  bool has_walker = false;
  bool has_micromag = false;
  WalkerResult walker;
  RunResult micromag;
};

ScenarioResult run_scenario(const Scenario& sc);

// Wall trajectories from the two engines on a common clock: the reduced
// model is linearly interpolated onto the grid-model sample times.
struct EngineComparison {
  size_t n_points = 0;
  double max_abs_diff_m = 0.0;   // max_t |x_w(t) - x_m(t)|
  double excursion_m = 0.0;      // max_t |x_m(t) - x_m(0)|
  double rel_dev = 0.0;          // max_abs_diff / excursion
};

EngineComparison compare_engines(const WalkerSeries& w,
                                 const MicromagSeries& m);

// Least-squares slope of x(t) over the trailing fraction of the series.
double tail_velocity_m_per_s(const std::vector<double>& t_s,
                             const std::vector<double>& x_m,
                             double tail_frac);

// Launch velocity: quadratic fit x = a + v t + c t^2 over t <= t_window.
double initial_velocity_m_per_s(const std::vector<double>& t_s,
                                const std::vector<double>& x_m,
                                double t_window_s);

// First time x(t) reaches the target (linear interpolation); found=false
// when it never does.
double first_crossing_time_s(const std::vector<double>& t_s,
                             const std::vector<double>& x_m, double target_m,
                             bool* found);

// A run keeps its wall if it ended cleanly and either never tilted past the
// critical angle or settled (tail speed under 2 m/s) despite doing so.
bool wall_survives(const MaterialParams& mat, const RunResult& r);

// Bisect the torque between a surviving and a destroying run.
struct CriticalSearch {
  double b_lo_m_per_s = 800.0;
  double b_hi_m_per_s = 1500.0;
  double tol_m_per_s = 20.0;
  SimConfig sim;  // horizon in sim.t_end_s
};

struct CriticalResult {
  bool bracket_ok = false;  // endpoints behaved as assumed
  double b_low_m_per_s = 0.0;   // last surviving torque
  double b_high_m_per_s = 0.0;  // first destroying torque
  int n_runs = 0;
};

CriticalResult find_critical_current(const MaterialParams& mat,
                                     const CriticalSearch& search);

// Depinning threshold sweep: for each torque, bisect the field magnitude
// (applied with the given sign) that frees the wall from the pinning center
// within the horizon. Escape means |x - x0| > zeta + 5 W0.
struct PhaseDiagramSpec {
  MaterialParams material;
  SimConfig sim;  // sim.pins must hold exactly one center; t_end is the horizon
  std::vector<double> bJ_list_m_per_s;
  double H_max_Oe = 150.0;
  double H_tol_Oe = 0.5;
  double H_sign = -1.0;
  int threads = 0;  // 0 = hardware concurrency
};

struct DepinPoint {
  double bJ_m_per_s = 0.0;
  double H_c_Oe = 0.0;
  bool bracketed = false;  // false when even H_max does not free the wall
  int n_runs = 0;
};

struct SweepResult {
  std::vector<DepinPoint> points;  // same order as bJ_list
};

// Single-torque bisection, the unit the sweep is built from.
DepinPoint find_depinning_field(const PhaseDiagramSpec& spec,
                                double bJ_m_per_s);

SweepResult depinning_phase_diagram(const PhaseDiagramSpec& spec);

PhaseDiagramSpec load_sweep(const std::string& path,
                            const std::vector<MaterialParams>* db);

}  // namespace dwsim
