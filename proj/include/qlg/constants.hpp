#pragma once

namespace qlg::constants {

// Fixed values; never read from the environment.
inline constexpr double kHbar = 1.054571817e-34;           // J s
inline constexpr double kSpeedOfLight = 2.99792458e8;      // m / s
inline constexpr double kElementaryCharge = 1.602176634e-19;  // C
inline constexpr double kNewtonG = 6.674e-11;              // m^3 kg^-1 s^-2
inline constexpr double kAtomicMassUnit = 1.66053906660e-27;  // kg
inline constexpr double kPi = 3.14159265358979323846;

}  // namespace qlg::constants
