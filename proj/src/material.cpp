#include "dwsim/material.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace dwsim {

MaterialParams MaterialParams::from_si(const std::string& name,
                                       double Ms_A_per_m, double P,
                                       double H_K_Oe, double A_J_per_m,
                                       double alpha, double gamma_per_Oe_s) {
  MaterialParams m;
  m.name = name;
  m.Ms = Ms_A_per_m * 1.0e-3;   // A/m -> emu/cm^3
  m.H_K = H_K_Oe;
  m.A_ex = A_J_per_m * 1.0e5;   // J/m -> erg/cm
  m.alpha = alpha;
  m.gamma = gamma_per_Oe_s;
  m.P = P;
  return m;
}

void MaterialParams::validate() const {
  auto bad = [this](const std::string& what) {
    throw MaterialError("material '" + name + "': " + what);
  };
  if (!(Ms > 0.0) || !std::isfinite(Ms)) bad("Ms must be positive");
  if (!(H_K > 0.0) || !std::isfinite(H_K)) bad("H_K must be positive");
  if (!(A_ex > 0.0) || !std::isfinite(A_ex)) bad("exchange stiffness must be positive");
  if (!(alpha >= 0.0 && alpha <= 1.0)) bad("alpha must lie in [0, 1]");
  if (!(gamma > 0.0) || !std::isfinite(gamma)) bad("gamma must be positive");
  if (!(P >= 0.0 && P <= 1.0)) bad("polarization must lie in [0, 1]");
}

DerivedScales derived_scales(const MaterialParams& mat) {
  const double K = mat.H_K;               // Oe
  const double D = 4.0 * kPi * mat.Ms;    // Oe
  const double W0 = std::sqrt(2.0 * mat.A_ex / (K * mat.Ms));      // cm
  const double xi = std::sqrt(mat.A_ex / (D * mat.Ms));            // cm
  const double sin2_phic = K / (2.0 * K + D);

  DerivedScales s;
  s.W0_m = W0 * 1.0e-2;
  s.xi_m = xi * 1.0e-2;
  s.demag_Oe = D;
  s.c0_per_m = 1.0e2 / W0;
  s.sin_phi_c = std::sqrt(sin2_phic);
  s.phi_c_rad = std::asin(s.sin_phi_c);
  // Critical torque: the largest b_J the internal restoring torque can hold
  // stationary. The soft-wall value 4 pi gamma Ms xi is reduced by the
  // anisotropy correction sqrt(1 + 2 H_K / (4 pi Ms)).
  const double b_approx = D * mat.gamma * xi;  // cm/s
  s.b_c_approx_m_per_s = b_approx * 1.0e-2;
  s.b_c_m_per_s = b_approx / std::sqrt(1.0 + 2.0 * K / D) * 1.0e-2;
  // Rest wall energy 2 sqrt(2 A H_K Ms) per unit area: erg/cm^2 -> J/m^2.
  s.E0_J_per_m2 = 2.0 * std::sqrt(2.0 * mat.A_ex * K * mat.Ms) * 1.0e-3;
  // Stored-energy coefficient 1/(2 pi gamma^2 W0): erg s^2/cm^4 -> J s^2/m^4.
  s.L_w_J_s2_per_m4 = 10.0 / (2.0 * kPi * mat.gamma * mat.gamma * W0);
  return s;
}

double compute_bJ(const MaterialParams& mat, double j_e_A_per_m2) {
  return mat.P * j_e_A_per_m2 * kMuB / (kElementaryCharge * mat.Ms_si());
}

double current_for_bJ(const MaterialParams& mat, double bJ_m_per_s) {
  return bJ_m_per_s * kElementaryCharge * mat.Ms_si() / (mat.P * kMuB);
}

namespace {

// Trim ASCII whitespace from both ends.
std::string trim(const std::string& s) {
  size_t b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  size_t e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

double parse_number(const std::string& text, const std::string& path, int line) {
  const char* begin = text.c_str();
  char* end = nullptr;
  double v = std::strtod(begin, &end);
  if (end == begin || *end != '\0' || !std::isfinite(v)) {
    throw MaterialError(path + ":" + std::to_string(line) +
                        ": expected a number, got '" + text + "'");
  }
  return v;
}

struct RecordBuilder {
  std::string name;
  double Ms_si = -1.0, P = -1.0, H_K = 0.0, A_si = 0.0;
  double alpha = 0.0, gamma = kGammaDefault;
  int start_line = 0;
  bool any = false;

  void finish(std::vector<MaterialParams>& out, const std::string& path) {
    if (!any) return;
    if (name.empty()) {
      throw MaterialError(path + ":" + std::to_string(start_line) +
                          ": record missing 'name'");
    }
    if (Ms_si < 0.0 || P < 0.0) {
      throw MaterialError(path + ":" + std::to_string(start_line) + ": record '" +
                          name + "' missing Ms_A_per_m or P");
    }
    out.push_back(MaterialParams::from_si(name, Ms_si, P, H_K, A_si, alpha, gamma));
    *this = RecordBuilder{};
  }
};

}  // namespace

std::vector<MaterialParams> load_material_db(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw MaterialError("cannot open material database '" + path + "'");

  std::vector<MaterialParams> out;
  RecordBuilder rec;
  std::string raw;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    std::string s = raw;
    if (size_t h = s.find('#'); h != std::string::npos) s.erase(h);
    s = trim(s);
    if (s.empty()) {
      rec.finish(out, path);
      continue;
    }
    size_t eq = s.find('=');
    if (eq == std::string::npos) {
      throw MaterialError(path + ":" + std::to_string(line) +
                          ": expected 'key = value'");
    }
    std::string key = trim(s.substr(0, eq));
    std::string val = trim(s.substr(eq + 1));
    if (key.empty() || val.empty()) {
      throw MaterialError(path + ":" + std::to_string(line) +
                          ": empty key or value");
    }
    if (!rec.any) rec.start_line = line;
    rec.any = true;
    if (key == "name") rec.name = val;
    else if (key == "Ms_A_per_m") rec.Ms_si = parse_number(val, path, line);
    else if (key == "P") rec.P = parse_number(val, path, line);
    else if (key == "H_K_Oe") rec.H_K = parse_number(val, path, line);
    else if (key == "A_J_per_m") rec.A_si = parse_number(val, path, line);
    else if (key == "alpha") rec.alpha = parse_number(val, path, line);
    else if (key == "gamma_per_Oe_s") rec.gamma = parse_number(val, path, line);
    else {
      throw MaterialError(path + ":" + std::to_string(line) + ": unknown key '" +
                          key + "'");
    }
  }
  rec.finish(out, path);

  for (const auto& m : out) {
    if (!(m.Ms > 0.0)) {
      throw MaterialError("material '" + m.name + "' in " + path +
                          ": Ms must be positive");
    }
    if (!(m.P >= 0.0 && m.P <= 1.0)) {
      throw MaterialError("material '" + m.name + "' in " + path +
                          ": polarization must lie in [0, 1]");
    }
  }
  return out;
}

const MaterialParams* find_material(const std::vector<MaterialParams>& db,
                                    const std::string& name) {
  for (const auto& m : db) {
    if (m.name == name) return &m;
  }
  return nullptr;
}

}  // namespace dwsim
