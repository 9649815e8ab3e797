#include "dwsim/units.hpp"

#include "dwsim/constants.hpp"

namespace dwsim {
namespace {

// Quantity classes: conversions are only defined within a class.
enum class Quantity { field, magnetization, exchange, current_density, length };

Quantity quantity_of(Unit u) {
  switch (u) {
    case Unit::Oe:
    case Unit::A_per_m:
      return Quantity::field;
    case Unit::emu_per_cm3:
      return Quantity::magnetization;
    case Unit::J_per_m:
    case Unit::erg_per_cm:
      return Quantity::exchange;
    case Unit::A_per_cm2:
    case Unit::A_per_m2:
      return Quantity::current_density;
    case Unit::m:
    case Unit::cm:
      return Quantity::length;
  }
  throw UnitError("unknown unit");
}

// Factor taking a value in `u` to the SI member of its quantity class.
double to_si_factor(Unit u) {
  switch (u) {
    case Unit::Oe:
      return 1000.0 / (4.0 * kPi);  // Oe -> A/m
    case Unit::A_per_m:
      return 1.0;
    case Unit::emu_per_cm3:
      return 1000.0;  // emu/cm^3 -> A/m
    case Unit::J_per_m:
      return 1.0;
    case Unit::erg_per_cm:
      return 1.0e-5;  // erg/cm -> J/m
    case Unit::A_per_cm2:
      return 1.0e4;  // A/cm^2 -> A/m^2
    case Unit::A_per_m2:
      return 1.0;
    case Unit::m:
      return 1.0;
    case Unit::cm:
      return 1.0e-2;
  }
  throw UnitError("unknown unit");
}

}  // namespace

std::string unit_name(Unit u) {
  switch (u) {
    case Unit::Oe: return "Oe";
    case Unit::A_per_m: return "A/m";
    case Unit::emu_per_cm3: return "emu/cm^3";
    case Unit::J_per_m: return "J/m";
    case Unit::erg_per_cm: return "erg/cm";
    case Unit::A_per_cm2: return "A/cm^2";
    case Unit::A_per_m2: return "A/m^2";
    case Unit::m: return "m";
    case Unit::cm: return "cm";
  }
  return "?";
}

double convert_units(double value, Unit from, Unit to) {
  // A/m serves double duty: as a field unit (vs Oe) and as a magnetization
  // unit (vs emu/cm^3). Allow the magnetization pairing explicitly.
  const bool magnetization_pair =
      (from == Unit::emu_per_cm3 && to == Unit::A_per_m) ||
      (from == Unit::A_per_m && to == Unit::emu_per_cm3);
  if (!magnetization_pair && quantity_of(from) != quantity_of(to)) {
    throw UnitError("cannot convert " + unit_name(from) + " to " + unit_name(to) +
                    ": different quantities");
  }
  if (from == to) return value;
  // Route through the SI member of the class; division keeps round trips at
  // the one-ulp level.
  return value * to_si_factor(from) / to_si_factor(to);
}

}  // namespace dwsim
