#include "dwsim/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <thread>
#include <utility>

#include "dwsim/constants.hpp"

namespace dwsim {

namespace {

std::string path_stem(const std::string& p) {
  const size_t slash = p.find_last_of("/\\");
  std::string base = (slash == std::string::npos) ? p : p.substr(slash + 1);
  const size_t dot = base.find_last_of('.');
  if (dot == std::string::npos || dot == 0) return base;
  return base.substr(0, dot);
}

MaterialParams material_from_config(const ConfigDoc& doc,
                                    const std::vector<MaterialParams>* db) {
  const ConfigSection* ms = doc.find("material");
  if (!ms) throw ConfigError(doc.origin + ": missing [material] section");
  SectionView v(doc, *ms);
  v.allow_only({"name", "Ms_A_per_m", "P", "H_K_Oe", "A_J_per_m", "alpha",
                "gamma_per_Oe_s"});

  MaterialParams m;
  if (v.has("name")) {
    if (!db) {
      throw ConfigError(doc.origin +
                        ": named material needs a material database (--db)");
    }
    const MaterialParams* base = find_material(*db, v.str("name"));
    if (!base) {
      throw ConfigError(doc.origin + ": unknown material '" + v.str("name") +
                        "'");
    }
    m = *base;
    if (v.has("Ms_A_per_m")) m.Ms = v.num("Ms_A_per_m") * 1.0e-3;
    if (v.has("P")) m.P = v.num("P");
    if (v.has("H_K_Oe")) m.H_K = v.num("H_K_Oe");
    if (v.has("A_J_per_m")) m.A_ex = v.num("A_J_per_m") * 1.0e5;
    if (v.has("alpha")) m.alpha = v.num("alpha");
    if (v.has("gamma_per_Oe_s")) m.gamma = v.num("gamma_per_Oe_s");
  } else {
    m = MaterialParams::from_si(
        "inline", v.num("Ms_A_per_m"), v.num_or("P", 0.0), v.num("H_K_Oe"),
        v.num("A_J_per_m"), v.num("alpha"),
        v.num_or("gamma_per_Oe_s", kGammaDefault));
  }
  m.validate();
  return m;
}

struct RunSections {
  SimConfig sim;
  EngineSel engine = EngineSel::both;
  int walker_stride = 1;
};

RunSections run_sections_from(const ConfigDoc& doc) {
  RunSections out;
  SimConfig& cfg = out.sim;

  if (const ConfigSection* gs = doc.find("grid")) {
    SectionView v(doc, *gs);
    v.allow_only({"length_m", "dx_m", "clamp_cells", "wall_x0_m"});
    cfg.length_m = v.num_or("length_m", cfg.length_m);
    cfg.dx_m = v.num_or("dx_m", cfg.dx_m);
    cfg.clamp_cells = (int)v.integer_or("clamp_cells", cfg.clamp_cells);
    cfg.wall_x0_m = v.num_or("wall_x0_m", 0.0);
  }

  if (const ConfigSection* rs = doc.find("run")) {
    SectionView v(doc, *rs);
    v.allow_only({"t_end_s", "dt_s", "sample_every", "stepper",
                  "settle_time_s", "snapshots_s", "engine",
                  "walker_sample_stride", "renormalize"});
    cfg.t_end_s = v.num_or("t_end_s", 0.0);
    cfg.dt_s = v.num_or("dt_s", 0.0);
    cfg.sample_every = (int)v.integer_or("sample_every", cfg.sample_every);
    cfg.settle_time_s = v.num_or("settle_time_s", 0.0);
    cfg.renormalize = v.integer_or("renormalize", 1) != 0;
    if (v.has("snapshots_s")) cfg.snapshot_times_s = v.num_list("snapshots_s");

    const std::string st = v.str_or("stepper", "rk4");
    if (st == "rk4") cfg.stepper = Stepper::rk4;
    else if (st == "abm4") cfg.stepper = Stepper::abm4;
    else throw ConfigError(doc.origin + ": stepper must be rk4 or abm4");

    const std::string eng = v.str_or("engine", "both");
    if (eng == "walker") out.engine = EngineSel::walker;
    else if (eng == "micromag") out.engine = EngineSel::micromag;
    else if (eng == "both") out.engine = EngineSel::both;
    else throw ConfigError(doc.origin + ": engine must be walker, micromag or both");

    out.walker_stride = (int)v.integer_or("walker_sample_stride", 1);
  }

  for (const ConfigSection* ps : doc.find_all("pinning")) {
    SectionView v(doc, *ps);
    v.allow_only({"V0_Oe", "zeta_m", "x0_m"});
    PinningCenter pin;
    pin.V0_Oe = v.num("V0_Oe");
    pin.zeta_m = v.num("zeta_m");
    pin.x0_m = v.num_or("x0_m", 0.0);
    if (!(pin.zeta_m > 0.0)) {
      throw ConfigError(doc.origin + ": pinning zeta_m must be positive");
    }
    cfg.pins.push_back(pin);
  }
  return out;
}

DriveProgram drive_from_config(const ConfigDoc& doc) {
  DriveProgram p;
  bool first = true;
  for (const ConfigSection* ds : doc.find_all("drive")) {
    SectionView v(doc, *ds);
    v.allow_only({"t_start_s", "bJ_m_per_s", "H_ext_Oe"});
    const double t0 = v.num_or("t_start_s", 0.0);
    const double b = v.num_or("bJ_m_per_s", 0.0);
    const double H = v.num_or("H_ext_Oe", 0.0);
    if (first) {
      if (t0 != 0.0) {
        throw ConfigError(doc.origin + ": first [drive] must start at t = 0");
      }
      p = DriveProgram::constant(b, H);
      first = false;
    } else {
      p.add_segment(t0, b, H);
    }
  }
  return p;
}

void reject_unknown_sections(const ConfigDoc& doc,
                             std::initializer_list<const char*> allowed) {
  for (const auto& s : doc.sections) {
    bool ok = false;
    for (const char* a : allowed) {
      if (s.name == a) {
        ok = true;
        break;
      }
    }
    if (!ok) {
      throw ConfigError(doc.origin + ":" + std::to_string(s.line) +
                        ": unknown section [" + s.name + "]");
    }
  }
}

}  // namespace

Scenario load_scenario(const std::string& path,
                       const std::vector<MaterialParams>* db) {
  const ConfigDoc doc = ConfigDoc::parse_file(path);
  reject_unknown_sections(doc, {"material", "grid", "run", "drive", "pinning"});

  Scenario sc;
  sc.name = path_stem(path);
  sc.material = material_from_config(doc, db);
  RunSections rs = run_sections_from(doc);
  sc.sim = rs.sim;
  sc.engine = rs.engine;
  sc.walker_sample_stride = rs.walker_stride;
  sc.drive = drive_from_config(doc);
  if (!(sc.sim.t_end_s > 0.0)) {
    throw ConfigError(doc.origin + ": [run] t_end_s must be set and positive");
  }
  return sc;
}

ScenarioResult run_scenario(const Scenario& sc) {
  ScenarioResult out;
  if (sc.engine != EngineSel::micromag) {
    WalkerOptions opt;
    opt.t_end_s = sc.sim.t_end_s;
    opt.sample_stride = sc.walker_sample_stride;
    opt.x0_m = sc.sim.wall_x0_m;
    out.walker = integrate_walker(sc.material, sc.drive, opt);
    out.has_walker = true;
  }
  if (sc.engine != EngineSel::walker) {
    MicromagEngine engine(sc.material, sc.sim);
    out.micromag = engine.run(sc.drive);
    out.has_micromag = true;
  }
  return out;
}

EngineComparison compare_engines(const WalkerSeries& w,
                                 const MicromagSeries& m) {
  EngineComparison c;
  if (w.t_s.size() < 2 || m.t_s.empty()) return c;
  const double x0 = m.x_m.front();
  size_t j = 0;
  for (size_t i = 0; i < m.t_s.size(); ++i) {
    const double t = m.t_s[i];
    if (t < w.t_s.front() || t > w.t_s.back()) continue;
    while (j + 2 < w.t_s.size() && w.t_s[j + 1] < t) ++j;
    const double t0 = w.t_s[j], t1 = w.t_s[j + 1];
    const double f = (t1 > t0) ? (t - t0) / (t1 - t0) : 0.0;
    const double xw = w.x_m[j] + f * (w.x_m[j + 1] - w.x_m[j]);
    c.max_abs_diff_m = std::max(c.max_abs_diff_m, std::abs(xw - m.x_m[i]));
    c.excursion_m = std::max(c.excursion_m, std::abs(m.x_m[i] - x0));
    ++c.n_points;
  }
  if (c.excursion_m > 0.0) c.rel_dev = c.max_abs_diff_m / c.excursion_m;
  return c;
}

double tail_velocity_m_per_s(const std::vector<double>& t_s,
                             const std::vector<double>& x_m,
                             double tail_frac) {
  const size_t n = t_s.size();
  if (n < 2 || x_m.size() != n) return 0.0;
  const double cut = t_s.back() - tail_frac * (t_s.back() - t_s.front());
  size_t first = 0;
  while (first < n && t_s[first] < cut) ++first;
  if (n - first < 2) first = n - 2;

  double tm = 0.0, xm = 0.0;
  const size_t cnt = n - first;
  for (size_t i = first; i < n; ++i) {
    tm += t_s[i];
    xm += x_m[i];
  }
  tm /= (double)cnt;
  xm /= (double)cnt;
  double sxx = 0.0, sxy = 0.0;
  for (size_t i = first; i < n; ++i) {
    const double dt = t_s[i] - tm;
    sxx += dt * dt;
    sxy += dt * (x_m[i] - xm);
  }
  return sxx > 0.0 ? sxy / sxx : 0.0;
}

double initial_velocity_m_per_s(const std::vector<double>& t_s,
                                const std::vector<double>& x_m,
                                double t_window_s) {
  size_t n = 0;
  while (n < t_s.size() && t_s[n] <= t_window_s) ++n;
  if (n < 3) return tail_velocity_m_per_s(
      std::vector<double>(t_s.begin(), t_s.begin() + std::min<size_t>(t_s.size(), 2)),
      std::vector<double>(x_m.begin(), x_m.begin() + std::min<size_t>(x_m.size(), 2)),
      1.0);

  // x = a + v tau + c tau^2 with tau = t / window, via normal equations.
  double S[5] = {0, 0, 0, 0, 0};
  double R[3] = {0, 0, 0};
  for (size_t i = 0; i < n; ++i) {
    const double tau = t_s[i] / t_window_s;
    double p = 1.0;
    for (int k = 0; k < 5; ++k) {
      S[k] += p;
      if (k < 3) R[k] += x_m[i] * p;
      p *= tau;
    }
  }
  double M[3][4] = {{S[0], S[1], S[2], R[0]},
                    {S[1], S[2], S[3], R[1]},
                    {S[2], S[3], S[4], R[2]}};
  // Gaussian elimination with partial pivoting on the 3x3 system.
  for (int col = 0; col < 3; ++col) {
    int piv = col;
    for (int r = col + 1; r < 3; ++r) {
      if (std::abs(M[r][col]) > std::abs(M[piv][col])) piv = r;
    }
    std::swap(M[col], M[piv]);
    for (int r = 0; r < 3; ++r) {
      if (r == col || M[col][col] == 0.0) continue;
      const double f = M[r][col] / M[col][col];
      for (int cc = col; cc < 4; ++cc) M[r][cc] -= f * M[col][cc];
    }
  }
  const double v_tau = M[1][3] / M[1][1];
  return v_tau / t_window_s;
}

double first_crossing_time_s(const std::vector<double>& t_s,
                             const std::vector<double>& x_m, double target_m,
                             bool* found) {
  if (found) *found = false;
  for (size_t i = 0; i + 1 < t_s.size(); ++i) {
    const double d0 = x_m[i] - target_m;
    const double d1 = x_m[i + 1] - target_m;
    if (d0 == 0.0) {
      if (found) *found = true;
      return t_s[i];
    }
    if (d0 * d1 < 0.0) {
      if (found) *found = true;
      return t_s[i] + (t_s[i + 1] - t_s[i]) * d0 / (d0 - d1);
    }
  }
  if (!t_s.empty() && x_m.back() == target_m) {
    if (found) *found = true;
    return t_s.back();
  }
  return 0.0;
}

bool wall_survives(const MaterialParams& mat, const RunResult& r) {
  if (r.status != RunStatus::ok || r.stopped_early) return false;
  if (r.series.max_mz.empty()) return false;
  const double sin_c = derived_scales(mat).sin_phi_c;
  const double peak =
      *std::max_element(r.series.max_mz.begin(), r.series.max_mz.end());
  if (peak <= sin_c) return true;
  // Tilted past the critical angle: only a settled wall counts as kept.
  const double v_tail =
      tail_velocity_m_per_s(r.series.t_s, r.series.x_m, 0.1);
  return std::abs(v_tail) < 2.0;
}

CriticalResult find_critical_current(const MaterialParams& mat,
                                     const CriticalSearch& search) {
  CriticalResult res;
  auto survives = [&](double b_mag) {
    SimConfig cfg = search.sim;
    MicromagEngine engine(mat, cfg);
    // Negative torque drives the wall toward +x; only |b| matters for
    // survival, the sign fixes the travel direction.
    const RunResult r = engine.run(DriveProgram::constant(-b_mag, 0.0));
    ++res.n_runs;
    return wall_survives(mat, r);
  };

  double lo = search.b_lo_m_per_s;
  double hi = search.b_hi_m_per_s;
  const bool lo_ok = survives(lo);
  const bool hi_ok = survives(hi);
  res.bracket_ok = lo_ok && !hi_ok;
  if (!res.bracket_ok) {
    res.b_low_m_per_s = lo;
    res.b_high_m_per_s = hi;
    return res;
  }
  while (hi - lo > search.tol_m_per_s) {
    const double mid = 0.5 * (lo + hi);
    if (survives(mid)) lo = mid;
    else hi = mid;
  }
  res.b_low_m_per_s = lo;
  res.b_high_m_per_s = hi;
  return res;
}

namespace {

double depin_threshold_m(const PhaseDiagramSpec& spec) {
  return spec.sim.pins.at(0).zeta_m +
         5.0 * derived_scales(spec.material).W0_m;
}

bool run_escapes(const PhaseDiagramSpec& spec, double bJ, double H_mag) {
  SimConfig cfg = spec.sim;
  const PinningCenter& pin = cfg.pins.at(0);
  const double thresh = depin_threshold_m(spec);
  cfg.stop_center_m = pin.x0_m;
  cfg.stop_radius_m = thresh;
  MicromagEngine engine(spec.material, cfg);
  const RunResult r =
      engine.run(DriveProgram::constant(bJ, spec.H_sign * H_mag));
  for (double x : r.series.x_m) {
    if (std::abs(x - pin.x0_m) > thresh) return true;
  }
  return false;
}

}  // namespace

DepinPoint find_depinning_field(const PhaseDiagramSpec& spec,
                                double bJ_m_per_s) {
  if (spec.sim.pins.size() != 1) {
    throw std::invalid_argument("depinning sweep needs exactly one pinning center");
  }
  DepinPoint pt;
  pt.bJ_m_per_s = bJ_m_per_s;

  auto escapes = [&](double H) {
    ++pt.n_runs;
    return run_escapes(spec, bJ_m_per_s, H);
  };

  if (escapes(0.0)) {
    pt.H_c_Oe = 0.0;
    pt.bracketed = true;
    return pt;
  }
  if (!escapes(spec.H_max_Oe)) {
    pt.H_c_Oe = spec.H_max_Oe;  // lower bound only
    pt.bracketed = false;
    return pt;
  }
  double lo = 0.0;          // pinned
  double hi = spec.H_max_Oe;  // escaped
  while (hi - lo > spec.H_tol_Oe) {
    const double mid = 0.5 * (lo + hi);
    if (escapes(mid)) hi = mid;
    else lo = mid;
  }
  pt.H_c_Oe = 0.5 * (lo + hi);
  pt.bracketed = true;
  return pt;
}

SweepResult depinning_phase_diagram(const PhaseDiagramSpec& spec) {
  if (spec.sim.pins.size() != 1) {
    throw std::invalid_argument("depinning sweep needs exactly one pinning center");
  }
  // Construct one engine up front so configuration errors surface here and
  // not inside a worker thread.
  { MicromagEngine probe(spec.material, spec.sim); }

  SweepResult out;
  out.points.resize(spec.bJ_list_m_per_s.size());
  std::atomic<size_t> next{0};
  std::exception_ptr first_error = nullptr;
  std::atomic<bool> failed{false};

  auto worker = [&]() {
    for (;;) {
      const size_t i = next.fetch_add(1);
      if (i >= spec.bJ_list_m_per_s.size() || failed.load()) break;
      try {
        out.points[i] = find_depinning_field(spec, spec.bJ_list_m_per_s[i]);
      } catch (...) {
        if (!failed.exchange(true)) first_error = std::current_exception();
        break;
      }
    }
  };

  int nt = spec.threads > 0 ? spec.threads
                            : (int)std::thread::hardware_concurrency();
  nt = std::max(1, std::min<int>(nt, (int)spec.bJ_list_m_per_s.size()));
  std::vector<std::thread> pool;
  for (int i = 0; i < nt - 1; ++i) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();
  if (first_error) std::rethrow_exception(first_error);
  return out;
}

PhaseDiagramSpec load_sweep(const std::string& path,
                            const std::vector<MaterialParams>* db) {
  const ConfigDoc doc = ConfigDoc::parse_file(path);
  reject_unknown_sections(doc, {"material", "grid", "run", "pinning", "sweep"});

  PhaseDiagramSpec spec;
  spec.material = material_from_config(doc, db);
  spec.sim = run_sections_from(doc).sim;

  const ConfigSection* ss = doc.find("sweep");
  if (!ss) throw ConfigError(doc.origin + ": missing [sweep] section");
  SectionView v(doc, *ss);
  v.allow_only({"bJ_list_m_per_s", "H_max_Oe", "H_tol_Oe", "H_sign",
                "threads", "horizon_s"});
  spec.bJ_list_m_per_s = v.num_list("bJ_list_m_per_s");
  spec.H_max_Oe = v.num_or("H_max_Oe", spec.H_max_Oe);
  spec.H_tol_Oe = v.num_or("H_tol_Oe", spec.H_tol_Oe);
  spec.H_sign = v.num_or("H_sign", spec.H_sign);
  spec.threads = (int)v.integer_or("threads", 0);
  if (v.has("horizon_s")) spec.sim.t_end_s = v.num("horizon_s");

  if (!(spec.sim.t_end_s > 0.0)) {
    throw ConfigError(doc.origin +
                      ": set [run] t_end_s or [sweep] horizon_s to a positive time");
  }
  if (spec.sim.pins.size() != 1) {
    throw ConfigError(doc.origin + ": sweep needs exactly one [pinning] section");
  }
  if (!(spec.H_tol_Oe > 0.0) || !(spec.H_max_Oe > 0.0)) {
    throw ConfigError(doc.origin + ": H_max_Oe and H_tol_Oe must be positive");
  }
  if (spec.H_sign != 1.0 && spec.H_sign != -1.0) {
    throw ConfigError(doc.origin + ": H_sign must be +1 or -1");
  }
  return spec;
}

}  // namespace dwsim
