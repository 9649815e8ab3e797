// Unit conversions between SI and Gaussian-CGS quantities.
//
// The library stores material parameters and runs all field arithmetic in
// Gaussian-CGS (emu/cm^3, Oe, erg/cm, cm, s); the public API takes SI except
// for magnetic fields, which are quoted in Oe throughout.
#pragma once

#include <stdexcept>
#include <string>

namespace dwsim {

enum class Unit {
  Oe,           // magnetic field, Gaussian
  A_per_m,      // magnetic field or magnetization, SI
  emu_per_cm3,  // magnetization, Gaussian (numerically = G)
  J_per_m,      // exchange stiffness, SI
  erg_per_cm,   // exchange stiffness, Gaussian
  A_per_cm2,    // current density, mixed practical unit
  A_per_m2,     // current density, SI
  m,            // length
  cm,           // length
};

struct UnitError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Converts value from one unit to another. Throws UnitError for pairs that
// do not measure the same quantity.
double convert_units(double value, Unit from, Unit to);

std::string unit_name(Unit u);

// Common factors, exposed for direct use.
inline constexpr double kOeToApm = 1000.0 / (4.0 * 3.14159265358979323846);
inline constexpr double kEmuPerCm3ToApm = 1000.0;
inline constexpr double kErgPerCmToJpm = 1.0e-5;
inline constexpr double kApCm2ToApM2 = 1.0e4;

}  // namespace dwsim
