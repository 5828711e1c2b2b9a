#pragma once

namespace ohphase::constants {

// CODATA 2018
inline constexpr double kHbar = 1.054571817e-34;        // J s
inline constexpr double kBohrMagneton = 9.2740100783e-24; // J/T
inline constexpr double kDebye = 3.33564e-30;            // C m

// OH X^2 Pi_3/2, J = 3/2 defaults
inline constexpr double kDeltaDefaultGHz = 1.66;   // lambda-doubling, as quoted
inline constexpr double kMuEDefaultDebye = 1.667;  // electric dipole moment

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTwoPi = 2.0 * kPi;

// Model validity bounds (warnings only, not errors)
inline constexpr double kWeakEFieldVPerM = 1.0e5;   // 1 kV/cm
inline constexpr double kWeakBFieldTesla = 1.0e-2;  // 100 G

}  // namespace ohphase::constants
