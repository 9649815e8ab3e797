#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "dwsim/constants.hpp"

namespace dwsim {

struct MaterialError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Material parameters. Stored in Gaussian units because every internal
// formula runs in Gaussian units; SI crosses the boundary only through
// from_si() and the *_si() accessors.
struct MaterialParams {
  std::string name;
  double Ms = 0.0;     // saturation magnetization, emu/cm^3
  double H_K = 0.0;    // easy-axis anisotropy field along x, Oe
  double A_ex = 0.0;   // exchange stiffness, erg/cm
  double alpha = 0.0;  // Gilbert damping
  double gamma = kGammaDefault;  // gyromagnetic ratio, 1/(Oe s)
  double P = 0.0;      // current spin polarization

  static MaterialParams from_si(const std::string& name, double Ms_A_per_m,
                                double P, double H_K_Oe, double A_J_per_m,
                                double alpha,
                                double gamma_per_Oe_s = kGammaDefault);

  double Ms_si() const { return Ms * 1.0e3; }    // A/m
  double A_si() const { return A_ex * 1.0e-5; }  // J/m

  // Throws MaterialError when a parameter is outside its physical range.
  void validate() const;
};

// Scales derived from the material alone. All lengths/velocities in SI.
struct DerivedScales {
  double W0_m = 0.0;        // rest wall width sqrt(2A/(H_K Ms))
  double xi_m = 0.0;        // sqrt(A/(4 pi Ms^2))
  double demag_Oe = 0.0;    // 4 pi Ms, hard-axis (z) demag field
  double c0_per_m = 0.0;    // 1/W0
  double phi_c_rad = 0.0;   // tilt at which the restoring torque saturates
  double sin_phi_c = 0.0;
  double b_c_m_per_s = 0.0;         // critical spin-current velocity
  double b_c_approx_m_per_s = 0.0;  // 4 pi gamma Ms xi, the soft-wall limit
  double E0_J_per_m2 = 0.0;         // wall energy per unit area at rest
  double L_w_J_s2_per_m4 = 0.0;     // quadratic stored-energy coefficient
};

DerivedScales derived_scales(const MaterialParams& mat);

// Spin-current velocity b_J = P j_e mu_B / (e Ms) for a charge current
// density j_e in A/m^2. Result in m/s, signed like j_e.
double compute_bJ(const MaterialParams& mat, double j_e_A_per_m2);

// Charge current density (A/m^2) that produces a given b_J (m/s).
double current_for_bJ(const MaterialParams& mat, double bJ_m_per_s);

// Material database: blank-line separated records of "key = value" lines.
// Keys: name, Ms_A_per_m, P, H_K_Oe, A_J_per_m, alpha, gamma_per_Oe_s.
// Throws MaterialError with a line number on malformed input.
std::vector<MaterialParams> load_material_db(const std::string& path);

// Case-sensitive lookup; returns nullptr when absent.
const MaterialParams* find_material(const std::vector<MaterialParams>& db,
                                    const std::string& name);

}  // namespace dwsim
