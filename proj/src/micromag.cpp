#include "dwsim/micromag.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "dwsim/constants.hpp"

namespace dwsim {

const char* run_status_name(RunStatus s) {
  switch (s) {
    case RunStatus::ok: return "ok";
    case RunStatus::wall_destroyed: return "wall_destroyed";
    case RunStatus::wall_left_region: return "wall_left_region";
    case RunStatus::diverged: return "diverged";
  }
  return "?";
}

double exchange_stability_dt_s(const MaterialParams& mat, double dx_m) {
  // The stiffest mode is the cell-alternating exchange mode with precession
  // rate gamma * (2A/Ms) * 4/dx^2; keep omega*dt <= 1.
  const double dx_cm = dx_m * 1.0e2;
  return 0.25 * dx_cm * dx_cm * mat.Ms / (2.0 * mat.A_ex * mat.gamma);
}

WallTrack track_wall(const MagnetizationGrid& g, double W_ref_m,
                     int skip_cells) {
  WallTrack out;
  const int n = g.size();
  const int lo = skip_cells;
  const int hi = n - skip_cells;
  if (hi - lo < 4 || !(W_ref_m > 0.0)) return out;

  for (int i = lo; i < hi; ++i) {
    out.max_abs_mz = std::max(out.max_abs_mz, std::abs(g.m[i].z));
  }

  // Sign changes of m_x; a clean wall has exactly one.
  int first = -1;
  for (int i = lo; i + 1 < hi; ++i) {
    const double a = g.m[i].x;
    const double b = g.m[i + 1].x;
    if ((a > 0.0 && b <= 0.0) || (a <= 0.0 && b > 0.0)) {
      ++out.n_crossings;
      if (first < 0) first = i;
    }
  }
  if (out.n_crossings != 1) return out;

  const double a = g.m[first].x;
  const double b = g.m[first + 1].x;
  out.x_m = g.x_at(first) + g.dx_m * (a / (a - b));

  // Width from a tanh fit around the crossing: minimize the squared
  // residual of m_x against -tanh((x - x_c)/W) by golden section.
  int wlo = std::max(lo, (int)std::floor((out.x_m - 6.0 * W_ref_m - g.x_first_m) / g.dx_m));
  int whi = std::min(hi, (int)std::ceil((out.x_m + 6.0 * W_ref_m - g.x_first_m) / g.dx_m) + 1);
  auto sse = [&](double W) {
    double s = 0.0;
    for (int i = wlo; i < whi; ++i) {
      const double r = g.m[i].x + std::tanh((g.x_at(i) - out.x_m) / W);
      s += r * r;
    }
    return s;
  };
  const double gr = 0.6180339887498949;
  double wa = 0.2 * W_ref_m;
  double wb = 5.0 * W_ref_m;
  double wc = wb - gr * (wb - wa);
  double wd = wa + gr * (wb - wa);
  double fc = sse(wc);
  double fd = sse(wd);
  for (int it = 0; it < 40; ++it) {
    if (fc < fd) {
      wb = wd; wd = wc; fd = fc;
      wc = wb - gr * (wb - wa);
      fc = sse(wc);
    } else {
      wa = wc; wc = wd; fc = fd;
      wd = wa + gr * (wb - wa);
      fd = sse(wd);
    }
  }
  out.W_m = 0.5 * (wa + wb);
  out.valid = true;
  return out;
}

double wall_energy_J_per_m2(const MaterialParams& mat,
                            const MagnetizationGrid& g) {
  const double dx_cm = g.dx_m * 1.0e2;
  const double kd = 2.0 * kPi * mat.Ms * mat.Ms;  // erg/cm^3 per mz^2
  const double ka = 0.5 * mat.H_K * mat.Ms;       // erg/cm^3 per (1 - mx^2)
  double local = 0.0;
  for (const auto& m : g.m) {
    local += kd * m.z * m.z + ka * (1.0 - m.x * m.x);
  }
  // Staggered exchange A sum |m_{i+1}-m_i|^2 / dx matches the 3-point
  // Laplacian used in the field exactly.
  double exch = 0.0;
  for (int i = 0; i + 1 < g.size(); ++i) {
    exch += norm2(g.m[i + 1] - g.m[i]);
  }
  return (local * dx_cm + exch * mat.A_ex / dx_cm) * 1.0e-3;  // -> J/m^2
}

namespace {

// Effective field in Oe. pin_Oe may be null; it adds to the uniform axial
// field. Neumann ends (mirror neighbor).
void field_core(const MaterialParams& mat, const std::vector<Vec3>& m,
                double dx_cm, const std::vector<double>* pin_Oe,
                double H_ext_Oe, std::vector<Vec3>& H) {
  const int n = (int)m.size();
  H.resize(n);
  const double cex = 2.0 * mat.A_ex / (mat.Ms * dx_cm * dx_cm);
  const double hd = 4.0 * kPi * mat.Ms;
  for (int i = 0; i < n; ++i) {
    const Vec3& mm = m[i];
    const Vec3& ml = m[i > 0 ? i - 1 : 0];
    const Vec3& mr = m[i + 1 < n ? i + 1 : n - 1];
    const Vec3 lap = (ml - mm) + (mr - mm);
    const double hx = mat.H_K * mm.x + H_ext_Oe + (pin_Oe ? (*pin_Oe)[i] : 0.0);
    H[i] = {cex * lap.x + hx, cex * lap.y, cex * lap.z - hd * mm.z};
  }
}

Vec3 gradient_at(const std::vector<Vec3>& m, int i, double dx_cm) {
  const int n = (int)m.size();
  if (i == 0) return (m[1] - m[0]) * (1.0 / dx_cm);
  if (i == n - 1) return (m[n - 1] - m[n - 2]) * (1.0 / dx_cm);
  return (m[i + 1] - m[i - 1]) * (0.5 / dx_cm);
}

}  // namespace

double wall_energy_rate_W_per_m2(const MaterialParams& mat,
                                 const MagnetizationGrid& g,
                                 const std::vector<PinningCenter>& pins,
                                 const DriveSample& d) {
  const int n = g.size();
  if (n < 3) return 0.0;
  const double dx_cm = g.dx_m * 1.0e2;
  std::vector<double> pin(n, 0.0);
  for (const auto& p : pins) {
    for (int i = 0; i < n; ++i) pin[i] += pinning_field_Oe(p, g.x_at(i));
  }
  std::vector<Vec3> H;
  field_core(mat, g.m, dx_cm, &pin, d.H_ext_Oe, H);

  double loss = 0.0, work1 = 0.0, work2 = 0.0;
  for (int i = 0; i < n; ++i) {
    const Vec3 u = gradient_at(g.m, i, dx_cm);
    const Vec3 mxH = cross(g.m[i], H[i]);
    loss += norm2(mxH);
    work1 += dot(H[i], u);
    work2 += dot(u, cross(H[i], g.m[i]));
  }
  const double a2 = 1.0 + mat.alpha * mat.alpha;
  const double b = d.bJ_m_per_s * 1.0e2;  // cm/s
  const double rate = (-(mat.gamma * mat.alpha / a2) * mat.Ms * loss -
                       (b / a2) * mat.Ms * work1 -
                       (mat.alpha * b / a2) * mat.Ms * work2) *
                      dx_cm;  // erg/(cm^2 s)
  return rate * 1.0e-3;  // -> W/m^2
}

MicromagEngine::MicromagEngine(const MaterialParams& mat, const SimConfig& cfg)
    : mat_(mat), cfg_(cfg) {
  mat_.validate();
  if (cfg_.sample_every < 1) {
    throw std::invalid_argument("sample_every must be >= 1");
  }
  grid_ = initial_neel_wall(mat_, cfg_.length_m, cfg_.dx_m, cfg_.wall_x0_m);
  const int n = grid_.size();
  if (cfg_.clamp_cells < 0 || 2 * cfg_.clamp_cells >= n - 4) {
    throw std::invalid_argument("clamp_cells out of range");
  }
  dx_cm_ = grid_.dx_m * 1.0e2;

  const double bound = exchange_stability_dt_s(mat_, grid_.dx_m);
  if (cfg_.dt_s <= 0.0) {
    dt_ = std::min(0.8e-12, 0.5 * bound);
  } else if (cfg_.dt_s > bound) {
    throw std::invalid_argument(
        "dt " + std::to_string(cfg_.dt_s * 1e12) +
        " ps exceeds the exchange stability bound " +
        std::to_string(bound * 1e12) + " ps at this spacing");
  } else {
    dt_ = cfg_.dt_s;
  }

  apply_clamp();
  pin_field_Oe_.assign(n, 0.0);
  for (const auto& p : cfg_.pins) {
    for (int i = 0; i < n; ++i) {
      pin_field_Oe_[i] += pinning_field_Oe(p, grid_.x_at(i));
    }
  }
  h_.resize(n);
  k1_.resize(n);
  k2_.resize(n);
  k3_.resize(n);
  k4_.resize(n);
  ytmp_.resize(n);
  fhist_.assign(4, std::vector<Vec3>(n));
}

void MicromagEngine::apply_clamp() {
  const int n = grid_.size();
  for (int i = 0; i < cfg_.clamp_cells; ++i) {
    grid_.m[i] = {1.0, 0.0, 0.0};
    grid_.m[n - 1 - i] = {-1.0, 0.0, 0.0};
  }
}

void MicromagEngine::set_state(const std::vector<Vec3>& m) {
  if ((int)m.size() != grid_.size()) {
    throw std::invalid_argument("state size does not match grid");
  }
  grid_.m = m;
  apply_clamp();
}

void MicromagEngine::effective_field(const std::vector<Vec3>& m,
                                     double H_ext_Oe,
                                     std::vector<Vec3>& H) const {
  field_core(mat_, m, dx_cm_, &pin_field_Oe_, H_ext_Oe, H);
}

void MicromagEngine::llg_rhs(const std::vector<Vec3>& m, const DriveSample& d,
                             std::vector<Vec3>& dmdt) const {
  effective_field(m, d.H_ext_Oe, h_);
  const auto& H = h_;
  const int n = (int)m.size();
  dmdt.resize(n);
  const double a = mat_.alpha;
  const double inv = 1.0 / (1.0 + a * a);
  const double ga = mat_.gamma;
  const double b = d.bJ_m_per_s * 1.0e2;  // cm/s
  const int cl = cfg_.clamp_cells;
  for (int i = 0; i < n; ++i) {
    if (i < cl || i >= n - cl) {
      dmdt[i] = {0.0, 0.0, 0.0};
      continue;
    }
    const Vec3& mm = m[i];
    const Vec3 u = gradient_at(m, i, dx_cm_);
    const Vec3 mxH = cross(mm, H[i]);
    const Vec3 mxmxH = cross(mm, mxH);
    const Vec3 mxu = cross(mm, u);
    const Vec3 mxmxu = cross(mm, mxu);
    // (1+a^2) dm/dt = -g m x H - g a m x (m x H) - b m x (m x u) + a b m x u.
    // Every term is a cross with m, so the rate stays tangent to the sphere.
    dmdt[i] = inv * (-ga * mxH - (ga * a) * mxmxH - b * mxmxu + (a * b) * mxu);
  }
}

void MicromagEngine::renormalize_state() {
  for (auto& m : grid_.m) {
    const double len = norm(m);
    max_norm_drift_ = std::max(max_norm_drift_, std::abs(len - 1.0));
    if (cfg_.renormalize) {
      m.x /= len;
      m.y /= len;
      m.z /= len;
    }
  }
}

void MicromagEngine::step_rk4(const DriveSample& d, double h) {
  auto& y = grid_.m;
  const int n = (int)y.size();
  llg_rhs(y, d, k1_);
  for (int i = 0; i < n; ++i) ytmp_[i] = y[i] + (0.5 * h) * k1_[i];
  llg_rhs(ytmp_, d, k2_);
  for (int i = 0; i < n; ++i) ytmp_[i] = y[i] + (0.5 * h) * k2_[i];
  llg_rhs(ytmp_, d, k3_);
  for (int i = 0; i < n; ++i) ytmp_[i] = y[i] + h * k3_[i];
  llg_rhs(ytmp_, d, k4_);
  const double w = h / 6.0;
  for (int i = 0; i < n; ++i) {
    y[i] += w * (k1_[i] + 2.0 * k2_[i] + 2.0 * k3_[i] + k4_[i]);
  }
  renormalize_state();
}

void MicromagEngine::step_abm4(const DriveSample& d, double h) {
  auto& y = grid_.m;
  const int n = (int)y.size();
  const auto& f0 = fhist_[0];
  const auto& f1 = fhist_[1];
  const auto& f2 = fhist_[2];
  const auto& f3 = fhist_[3];
  const double c = h / 24.0;
  // Adams-Bashforth 4 predictor.
  for (int i = 0; i < n; ++i) {
    ytmp_[i] = y[i] + c * (55.0 * f3[i] - 59.0 * f2[i] + 37.0 * f1[i] -
                           9.0 * f0[i]);
  }
  llg_rhs(ytmp_, d, k1_);
  // Adams-Moulton corrector on the predicted slope.
  for (int i = 0; i < n; ++i) {
    y[i] += c * (9.0 * k1_[i] + 19.0 * f3[i] - 5.0 * f2[i] + f1[i]);
  }
  renormalize_state();
  std::rotate(fhist_.begin(), fhist_.begin() + 1, fhist_.end());
  llg_rhs(y, d, fhist_[3]);
}

RunResult MicromagEngine::run(const DriveProgram& drive) {
  if (!(cfg_.t_end_s > 0.0)) {
    throw std::invalid_argument("t_end must be positive");
  }
  max_norm_drift_ = 0.0;
  RunResult res;
  const DerivedScales sc = derived_scales(mat_);

  // Pre-drive relaxation with full damping to settle the discrete profile.
  if (cfg_.settle_time_s > 0.0) {
    MaterialParams fast = mat_;
    fast.alpha = 1.0;
    std::swap(mat_, fast);
    const long ns = std::max<long>(1, (long)std::ceil(cfg_.settle_time_s / dt_));
    const double hs = cfg_.settle_time_s / (double)ns;
    const DriveSample quiet{};
    for (long i = 0; i < ns; ++i) step_rk4(quiet, hs);
    std::swap(mat_, fast);
    max_norm_drift_ = 0.0;
  }

  // Wall-escape margin: stay clear of the clamped ends.
  const double margin = cfg_.clamp_cells * grid_.dx_m + 3.0 * sc.W0_m;
  const double x_lo = grid_.x_at(0) + margin;
  const double x_hi = grid_.x_at(grid_.size() - 1) - margin;

  double W_ref = sc.W0_m;
  double t = 0.0;

  auto finish = [&](RunStatus st, bool early) {
    res.status = st;
    res.stopped_early = early;
    res.t_stop_s = t;
    res.final_state = grid_;
    auto& s = res.series;
    s.v_m_per_s.assign(s.t_s.size(), 0.0);
    for (size_t i = 0; i + 1 < s.t_s.size(); ++i) {
      const size_t j0 = (i == 0) ? 0 : i - 1;
      const size_t j1 = i + 1;
      s.v_m_per_s[i] = (s.x_m[j1] - s.x_m[j0]) / (s.t_s[j1] - s.t_s[j0]);
    }
    if (s.t_s.size() >= 2) {
      const size_t k = s.t_s.size() - 1;
      s.v_m_per_s[k] = (s.x_m[k] - s.x_m[k - 1]) / (s.t_s[k] - s.t_s[k - 1]);
    }
    return res;
  };

  // Returns ok to continue; otherwise sets the failure status.
  RunStatus stop_status = RunStatus::ok;
  auto sample_now = [&](const DriveSample& d) {
    if (!(max_norm_drift_ < 1.0e-2)) {
      stop_status = RunStatus::diverged;
      return false;
    }
    const WallTrack w = track_wall(grid_, W_ref, cfg_.clamp_cells);
    if (!std::isfinite(w.max_abs_mz)) {
      stop_status = RunStatus::diverged;
      return false;
    }
    if (!w.valid) {
      stop_status = RunStatus::wall_destroyed;
      return false;
    }
    W_ref = w.W_m;
    auto& s = res.series;
    s.t_s.push_back(t);
    s.x_m.push_back(w.x_m);
    s.W_m.push_back(w.W_m);
    s.max_mz.push_back(w.max_abs_mz);
    s.E_J_per_m2.push_back(wall_energy_J_per_m2(mat_, grid_));
    s.dEdt_W_per_m2.push_back(
        wall_energy_rate_W_per_m2(mat_, grid_, cfg_.pins, d));
    if (w.x_m < x_lo || w.x_m > x_hi) {
      stop_status = RunStatus::wall_left_region;
      return false;
    }
    if (cfg_.stop_radius_m > 0.0 &&
        std::abs(w.x_m - cfg_.stop_center_m) > cfg_.stop_radius_m) {
      stop_status = RunStatus::ok;
      return false;
    }
    return true;
  };

  std::vector<double> snaps = cfg_.snapshot_times_s;
  std::sort(snaps.begin(), snaps.end());
  size_t isnap = 0;
  auto take_snapshots_up_to = [&](double tt) {
    while (isnap < snaps.size() && snaps[isnap] <= tt + 1e-18) {
      res.snapshots.push_back({tt, grid_.m});
      ++isnap;
    }
  };
  take_snapshots_up_to(0.0);

  {
    const DriveSample d0 = drive.at(0.0);
    if (!sample_now(d0)) return finish(stop_status, true);
  }

  std::vector<double> ends;
  for (double tb : drive.boundaries()) {
    if (tb > 0.0 && tb < cfg_.t_end_s) ends.push_back(tb);
  }
  ends.push_back(cfg_.t_end_s);

  long step_in_run = 0;
  double seg_start = 0.0;
  for (double seg_end : ends) {
    const DriveSample d = drive.at(seg_start);
    const long n_steps =
        std::max<long>(1, (long)std::ceil((seg_end - seg_start) / dt_ - 1e-9));
    const double h = (seg_end - seg_start) / (double)n_steps;

    // The multistep history is only valid within one drive segment.
    int hist_n = 0;
    if (cfg_.stepper == Stepper::abm4) {
      llg_rhs(grid_.m, d, fhist_[0]);
      hist_n = 1;
    }

    for (long i = 0; i < n_steps; ++i) {
      if (cfg_.stepper == Stepper::rk4 || hist_n < 4) {
        step_rk4(d, h);
        if (cfg_.stepper == Stepper::abm4) {
          llg_rhs(grid_.m, d, fhist_[hist_n]);
          ++hist_n;
        }
      } else {
        step_abm4(d, h);
      }
      t = seg_start + (double)(i + 1) * h;
      ++step_in_run;
      take_snapshots_up_to(t);
      if (step_in_run % cfg_.sample_every == 0 || i + 1 == n_steps) {
        if (!sample_now(d)) return finish(stop_status, true);
      }
    }
    seg_start = seg_end;
  }
  return finish(RunStatus::ok, false);
}

}  // namespace dwsim
