#include <cstdio>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "dwsim/constants.hpp"
#include "dwsim/experiments.hpp"
#include "dwsim/timeseries.hpp"

namespace {

using namespace dwsim;

std::vector<MaterialParams> load_db_or_empty(const std::string& path,
                                             bool* loaded) {
  *loaded = !path.empty();
  if (path.empty()) return {};
  return load_material_db(path);
}

const char* engine_name(EngineSel e) {
  switch (e) {
    case EngineSel::walker: return "walker";
    case EngineSel::micromag: return "micromag";
    case EngineSel::both: return "both";
  }
  return "?";
}

void manifest_material(RunManifest& man, const MaterialParams& m) {
  man.add("material.name", m.name);
  man.add_num("material.Ms_A_per_m", m.Ms_si());
  man.add_num("material.H_K_Oe", m.H_K);
  man.add_num("material.A_J_per_m", m.A_si());
  man.add_num("material.alpha", m.alpha);
  man.add_num("material.gamma_per_Oe_s", m.gamma);
  man.add_num("material.P", m.P);
}

void manifest_sim(RunManifest& man, const SimConfig& cfg) {
  man.add_num("grid.length_m", cfg.length_m);
  man.add_num("grid.dx_m", cfg.dx_m);
  man.add_num("grid.clamp_cells", cfg.clamp_cells);
  man.add_num("grid.wall_x0_m", cfg.wall_x0_m);
  man.add_num("run.t_end_s", cfg.t_end_s);
  man.add_num("run.dt_s", cfg.dt_s);
  man.add_num("run.sample_every", cfg.sample_every);
  man.add("run.stepper", cfg.stepper == Stepper::rk4 ? "rk4" : "abm4");
  man.add_num("run.settle_time_s", cfg.settle_time_s);
  man.add_num("run.renormalize", cfg.renormalize ? 1 : 0);
  for (size_t i = 0; i < cfg.pins.size(); ++i) {
    const std::string p = "pinning." + std::to_string(i) + ".";
    man.add_num(p + "V0_Oe", cfg.pins[i].V0_Oe);
    man.add_num(p + "zeta_m", cfg.pins[i].zeta_m);
    man.add_num(p + "x0_m", cfg.pins[i].x0_m);
  }
}

void manifest_drive(RunManifest& man, const DriveProgram& drive,
                    double t_end_s) {
  const DriveSample d0 = drive.at(0.0);
  man.add_num("drive.0.t_s", 0.0);
  man.add_num("drive.0.bJ_m_per_s", d0.bJ_m_per_s);
  man.add_num("drive.0.H_ext_Oe", d0.H_ext_Oe);
  int k = 1;
  for (double t : drive.boundaries()) {
    if (t >= t_end_s) break;
    const DriveSample d = drive.at(t);
    const std::string p = "drive." + std::to_string(k++) + ".";
    man.add_num(p + "t_s", t);
    man.add_num(p + "bJ_m_per_s", d.bJ_m_per_s);
    man.add_num(p + "H_ext_Oe", d.H_ext_Oe);
  }
}

int cmd_materials(const std::string& db_path, double j_A_per_m2) {
  const auto db = load_material_db(db_path);
  std::printf("%-10s %12s %6s %14s %12s %12s\n", "name", "Ms_A_per_m", "P",
              "bJ_m_per_s", "W0_nm", "bc_m_per_s");
  for (const auto& m : db) {
    const double bJ = compute_bJ(m, j_A_per_m2);
    if (m.H_K > 0.0 && m.A_ex > 0.0) {
      const DerivedScales sc = derived_scales(m);
      std::printf("%-10s %12.5g %6.3g %14.6g %12.5g %12.6g\n", m.name.c_str(),
                  m.Ms_si(), m.P, bJ, sc.W0_m * 1e9, sc.b_c_m_per_s);
    } else {
      std::printf("%-10s %12.5g %6.3g %14.6g %12s %12s\n", m.name.c_str(),
                  m.Ms_si(), m.P, bJ, "-", "-");
    }
  }
  std::printf("# bJ computed at j_e = %.6g A/m^2\n", j_A_per_m2);
  return 0;
}

int cmd_run(const std::string& scenario_path, const std::string& db_path,
            std::string out_prefix, bool quiet) {
  bool have_db = false;
  const auto db = load_db_or_empty(db_path, &have_db);
  const Scenario sc = load_scenario(scenario_path, have_db ? &db : nullptr);
  if (out_prefix.empty()) out_prefix = sc.name;

  const ScenarioResult res = run_scenario(sc);

  RunManifest man;
  man.add("tool", kToolVersion);
  man.add("scenario", sc.name);
  man.add("engine", engine_name(sc.engine));
  manifest_material(man, sc.material);
  manifest_sim(man, sc.sim);
  manifest_drive(man, sc.drive, sc.sim.t_end_s);

  if (res.has_walker) {
    write_text_file(out_prefix + "_walker.csv",
                    render_csv(walker_table(res.walker.series)));
    man.add_num("walker.x_final_m", res.walker.x_final_m);
    man.add_num("walker.phi_final_rad", res.walker.phi_final_rad);
    man.add("walker.reached_steady", res.walker.reached_steady ? "yes" : "no");
    if (!quiet) {
      std::printf("walker:   x_final = %.4g nm, phi_final = %.5g rad%s\n",
                  res.walker.x_final_m * 1e9, res.walker.phi_final_rad,
                  res.walker.reached_steady ? " (steady)" : "");
    }
  }
  if (res.has_micromag) {
    const RunResult& r = res.micromag;
    write_text_file(out_prefix + "_micromag.csv",
                    render_csv(micromag_table(r.series)));
    MagnetizationGrid ref = r.final_state;
    for (size_t i = 0; i < r.snapshots.size(); ++i) {
      write_text_file(out_prefix + "_snapshot_" + std::to_string(i) + ".csv",
                      render_csv(snapshot_table(ref, r.snapshots[i])));
    }
    man.add("micromag.status", run_status_name(r.status));
    man.add_num("micromag.t_stop_s", r.t_stop_s);
    if (!r.series.x_m.empty()) {
      man.add_num("micromag.x_final_m", r.series.x_m.back());
    }
    if (!quiet) {
      std::printf("micromag: status = %s, t_stop = %.4g ns",
                  run_status_name(r.status), r.t_stop_s * 1e9);
      if (!r.series.x_m.empty()) {
        std::printf(", x_final = %.4g nm", r.series.x_m.back() * 1e9);
      }
      std::printf("\n");
    }
  }
  if (res.has_walker && res.has_micromag) {
    const EngineComparison c =
        compare_engines(res.walker.series, res.micromag.series);
    man.add_num("compare.max_abs_diff_m", c.max_abs_diff_m);
    man.add_num("compare.rel_dev", c.rel_dev);
    if (!quiet) {
      std::printf("compare:  max |dx| = %.4g nm  (%.3g%% of excursion)\n",
                  c.max_abs_diff_m * 1e9, c.rel_dev * 100.0);
    }
  }
  write_text_file(out_prefix + "_manifest.txt", man.render());
  if (!quiet) std::printf("wrote %s_manifest.txt\n", out_prefix.c_str());
  return 0;
}

int cmd_sweep(const std::string& sweep_path, const std::string& db_path,
              std::string out_prefix) {
  bool have_db = false;
  const auto db = load_db_or_empty(db_path, &have_db);
  const PhaseDiagramSpec spec = load_sweep(sweep_path, have_db ? &db : nullptr);
  if (out_prefix.empty()) {
    out_prefix = sweep_path;
    const size_t dot = out_prefix.find_last_of('.');
    if (dot != std::string::npos) out_prefix.erase(dot);
  }
  const SweepResult res = depinning_phase_diagram(spec);

  Table t;
  t.columns = {"bJ_m_per_s", "H_c_Oe", "bracketed", "n_runs"};
  t.cols.resize(4);
  std::printf("%12s %10s %10s %7s\n", "bJ_m_per_s", "H_c_Oe", "bracketed",
              "n_runs");
  for (const auto& p : res.points) {
    t.cols[0].push_back(p.bJ_m_per_s);
    t.cols[1].push_back(p.H_c_Oe);
    t.cols[2].push_back(p.bracketed ? 1.0 : 0.0);
    t.cols[3].push_back(p.n_runs);
    std::printf("%12.5g %10.4f %10s %7d\n", p.bJ_m_per_s, p.H_c_Oe,
                p.bracketed ? "yes" : "NO", p.n_runs);
  }
  write_text_file(out_prefix + "_depinning.csv", render_csv(t));

  RunManifest man;
  man.add("tool", kToolVersion);
  manifest_material(man, spec.material);
  manifest_sim(man, spec.sim);
  man.add_num("sweep.H_max_Oe", spec.H_max_Oe);
  man.add_num("sweep.H_tol_Oe", spec.H_tol_Oe);
  man.add_num("sweep.H_sign", spec.H_sign);
  write_text_file(out_prefix + "_depinning_manifest.txt", man.render());
  std::printf("wrote %s_depinning.csv\n", out_prefix.c_str());
  return 0;
}

int cmd_critical(const std::string& db_path, const std::string& name,
                 bool simulate, double lo, double hi, double tol,
                 double horizon_s, double length_m, double dx_m, double dt_s) {
  const auto db = load_material_db(db_path);
  const MaterialParams* m = find_material(db, name);
  if (!m) {
    std::fprintf(stderr, "unknown material '%s' in %s\n", name.c_str(),
                 db_path.c_str());
    return 2;
  }
  m->validate();
  const DerivedScales sc = derived_scales(*m);
  std::printf("material %s: W0 = %.5g nm, 4piMs = %.6g Oe\n", m->name.c_str(),
              sc.W0_m * 1e9, sc.demag_Oe);
  std::printf("critical torque: %.6g m/s (soft-wall limit %.6g m/s)\n",
              sc.b_c_m_per_s, sc.b_c_approx_m_per_s);
  std::printf("critical current density: %.6g A/m^2 at P = %.3g\n",
              current_for_bJ(*m, sc.b_c_m_per_s), m->P);
  if (simulate) {
    CriticalSearch search;
    search.b_lo_m_per_s = lo;
    search.b_hi_m_per_s = hi;
    search.tol_m_per_s = tol;
    search.sim.length_m = length_m;
    search.sim.dx_m = dx_m;
    search.sim.dt_s = dt_s;
    search.sim.t_end_s = horizon_s;
    const CriticalResult r = find_critical_current(*m, search);
    if (!r.bracket_ok) {
      std::printf("grid-model bisection: bracket [%.4g, %.4g] m/s failed\n",
                  r.b_low_m_per_s, r.b_high_m_per_s);
      return 3;
    }
    std::printf("grid-model bisection: wall kept at %.5g, lost at %.5g m/s "
                "(%d runs)\n",
                r.b_low_m_per_s, r.b_high_m_per_s, r.n_runs);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"1-D ferromagnetic nanowire domain wall dynamics"};
  app.require_subcommand(1);

  std::string db_path, scenario_path, out_prefix, name = "Co";
  double j_e = 1.0e11;
  bool quiet = false, simulate = false;
  double lo = 800.0, hi = 1500.0, tol = 20.0, horizon = 5e-9;
  double length = 2.0e-6, dx = 2.5e-9, dt = 2.5e-13;

  auto* mats = app.add_subcommand("materials", "print the material table");
  mats->add_option("--db", db_path, "material database")->required();
  mats->add_option("--j", j_e, "current density, A/m^2");

  auto* run = app.add_subcommand("run", "run a scenario file");
  run->add_option("scenario", scenario_path, "scenario file")->required();
  run->add_option("--db", db_path, "material database");
  run->add_option("--out", out_prefix, "output prefix");
  run->add_flag("--quiet", quiet, "suppress the summary");

  auto* sweep = app.add_subcommand("sweep", "depinning threshold sweep");
  sweep->add_option("sweep_file", scenario_path, "sweep file")->required();
  sweep->add_option("--db", db_path, "material database");
  sweep->add_option("--out", out_prefix, "output prefix");

  auto* crit = app.add_subcommand("critical", "critical torque for a material");
  crit->add_option("--db", db_path, "material database")->required();
  crit->add_option("--material", name, "material name");
  crit->add_flag("--simulate", simulate, "bisect with the grid model too");
  crit->add_option("--lo", lo, "bracket low, m/s");
  crit->add_option("--hi", hi, "bracket high, m/s");
  crit->add_option("--tol", tol, "bisection tolerance, m/s");
  crit->add_option("--horizon", horizon, "run horizon, s");
  crit->add_option("--length", length, "wire length, m");
  crit->add_option("--dx", dx, "cell size, m");
  crit->add_option("--dt", dt, "time step, s");

  auto* cmp = app.add_subcommand("compare", "run both engines and compare");
  cmp->add_option("scenario", scenario_path, "scenario file")->required();
  cmp->add_option("--db", db_path, "material database");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (mats->parsed()) return cmd_materials(db_path, j_e);
    if (run->parsed()) return cmd_run(scenario_path, db_path, out_prefix, quiet);
    if (sweep->parsed()) return cmd_sweep(scenario_path, db_path, out_prefix);
    if (crit->parsed()) {
      return cmd_critical(db_path, name, simulate, lo, hi, tol, horizon,
                          length, dx, dt);
    }
    if (cmp->parsed()) {
      bool have_db = false;
      const auto db = load_db_or_empty(db_path, &have_db);
      Scenario sc = load_scenario(scenario_path, have_db ? &db : nullptr);
      sc.engine = EngineSel::both;
      const ScenarioResult res = run_scenario(sc);
      const EngineComparison c =
          compare_engines(res.walker.series, res.micromag.series);
      std::printf("points = %zu, max |dx| = %.5g nm, excursion = %.5g nm, "
                  "rel dev = %.4g%%\n",
                  c.n_points, c.max_abs_diff_m * 1e9, c.excursion_m * 1e9,
                  c.rel_dev * 100.0);
      return 0;
    }
  } catch (const ConfigError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const MaterialError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "runtime error: %s\n", e.what());
    return 3;
  }
  return 0;
}
