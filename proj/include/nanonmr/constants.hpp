#pragma once

#include <numbers>

namespace nanonmr {

/// Physical constants in SI units. All internal math is SI; laboratory
/// units (nm, G, uT, us, kHz) appear only at interfaces, see units.hpp.
struct PhysicalConstants {
  /// mu_0 / 4pi in T*m/A.
  static constexpr double mu0_over_4pi = 1e-7;
  /// Reduced Planck constant in J*s.
  static constexpr double hbar = 1.054571817e-34;
};

/// Built-in gyromagnetic ratios, rad s^-1 T^-1. Overridable through
/// configuration where species enter by name.
namespace gyromag {

inline constexpr double two_pi = 2.0 * std::numbers::pi;

/// 1H: 42.577 MHz/T (4.2577 kHz/G).
inline constexpr double proton = two_pi * 42.577e6;
/// 19F: 40.078 MHz/T.
inline constexpr double fluorine19 = two_pi * 40.078e6;
/// Electron-spin sensor: 28.024 GHz/T.
inline constexpr double electron_sensor = two_pi * 28.024e9;

}  // namespace gyromag

}  // namespace nanonmr
