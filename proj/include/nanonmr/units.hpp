#pragma once

#include <numbers>

namespace nanonmr::units {

// Interface values are laboratory units (nm, G, uT, us, kHz); all
// computation is SI. Each helper is a single multiplication so that
// round trips are exact to one machine epsilon per hop.

inline constexpr double pi = std::numbers::pi;

constexpr double nm_to_m(double nm) { return nm * 1e-9; }
constexpr double m_to_nm(double m) { return m * 1e9; }

constexpr double us_to_s(double us) { return us * 1e-6; }
constexpr double s_to_us(double s) { return s * 1e6; }

constexpr double gauss_to_tesla(double g) { return g * 1e-4; }
constexpr double tesla_to_gauss(double t) { return t * 1e4; }

constexpr double ut_to_tesla(double ut) { return ut * 1e-6; }
constexpr double tesla_to_ut(double t) { return t * 1e6; }

constexpr double nt_to_tesla(double nt) { return nt * 1e-9; }
constexpr double tesla_to_nt(double t) { return t * 1e9; }

constexpr double khz_to_rad_s(double khz) { return khz * (2.0 * pi * 1e3); }
constexpr double rad_s_to_khz(double w) { return w / (2.0 * pi * 1e3); }

constexpr double deg_to_rad(double deg) { return deg * (pi / 180.0); }
constexpr double rad_to_deg(double rad) { return rad * (180.0 / pi); }

/// Nuclear gyromagnetic ratios are usually tabulated in kHz/G.
constexpr double khz_per_gauss_to_rad_s_t(double k) {
  return k * (2.0 * pi * 1e3 * 1e4);
}
constexpr double rad_s_t_to_khz_per_gauss(double g) {
  return g / (2.0 * pi * 1e3 * 1e4);
}

constexpr double per_nm3_to_per_m3(double d) { return d * 1e27; }
constexpr double per_m3_to_per_nm3(double d) { return d * 1e-27; }

}  // namespace nanonmr::units
