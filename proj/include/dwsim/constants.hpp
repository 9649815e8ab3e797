// Physical constants (CODATA 2018) and the default gyromagnetic ratio.
#pragma once

#include <numbers>

namespace dwsim {

inline constexpr double kPi = std::numbers::pi;

// Bohr magneton [J/T]
inline constexpr double kMuB = 9.2740100783e-24;

// elementary charge [C]
inline constexpr double kElementaryCharge = 1.602176634e-19;

// vacuum permeability [T m/A]
inline constexpr double kMu0 = 4.0e-7 * kPi;

// default electron gyromagnetic ratio [1/(Oe s)], overridable per material
inline constexpr double kGammaDefault = 1.9e7;

inline constexpr const char* kToolVersion = "dwsim 1.0.0";

}  // namespace dwsim
