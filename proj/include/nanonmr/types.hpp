#pragma once

#include <string>
#include <vector>

#include "nanonmr/constants.hpp"
#include "nanonmr/errors.hpp"
#include "nanonmr/units.hpp"

namespace nanonmr {

/// A nuclear species: gyromagnetic ratio (rad s^-1 T^-1) and number
/// density (m^-3).
struct NucleusSpec {
  std::string label;
  double gamma = 0.0;
  double density = 0.0;

  void validate() const {
    if (!(gamma > 0.0)) throw InvalidArgument("NucleusSpec: gamma must be > 0");
    if (density < 0.0) throw InvalidArgument("NucleusSpec: density must be >= 0");
  }
};

inline NucleusSpec proton_spec(double density_per_m3 = 69.5e27) {
  return {"1H", gyromag::proton, density_per_m3};
}

inline NucleusSpec fluorine_spec(double density_per_m3 = 42.0e27) {
  return {"19F", gyromag::fluorine19, density_per_m3};
}

/// Spin sensor: gyromagnetic ratio, depth below the surface, tilt of the
/// sensor axis against the surface normal, background coherence envelope
/// and optical readout statistics. SI units throughout.
struct SensorParams {
  double gamma_e = gyromag::electron_sensor;  // rad s^-1 T^-1
  double depth_d = 2e-9;                      // m
  double alpha = units::deg_to_rad(4.0);      // rad
  double t2 = 10e-6;                          // s
  double stretch_n = 1.0;
  double contrast_c = 0.2;   // (alpha0 - alpha1) / alpha_avg
  double alpha_avg = 0.05;   // photons per readout
  double t_ir = 1e-6;        // init + readout overhead, s

  void validate() const {
    if (!(depth_d > 0.0)) throw InvalidArgument("SensorParams: depth_d must be > 0");
    if (!(t2 > 0.0)) throw InvalidArgument("SensorParams: t2 must be > 0");
    if (!(stretch_n > 0.0)) throw InvalidArgument("SensorParams: stretch_n must be > 0");
    if (contrast_c < 0.0 || contrast_c > 2.0)
      throw InvalidArgument("SensorParams: contrast_c must be in [0, 2]");
    if (!(alpha_avg > 0.0)) throw InvalidArgument("SensorParams: alpha_avg must be > 0");
  }
};

/// XY8-k decoupling sequence: N = 8k pi-pulses with interpulse spacing tau.
struct Xy8Sequence {
  int k = 1;
  double tau = 0.0;  // s

  Xy8Sequence() = default;
  Xy8Sequence(int order, double spacing) : k(order), tau(spacing) {
    if (k < 1) throw InvalidArgument("Xy8Sequence: k must be >= 1");
    if (!(tau > 0.0)) throw InvalidArgument("Xy8Sequence: tau must be > 0");
  }

  int n_pulses() const { return 8 * k; }
  double total_time() const { return n_pulses() * tau; }
};

enum class TraceKind { xy8_sweep, correlation_sweep, relaxation_population, rabi };

/// A measured or simulated (x, y, sigma) series. sigma is optional; when
/// present it must match the data length and be strictly positive.
struct CoherenceTrace {
  std::vector<double> x;
  std::vector<double> y;
  std::vector<double> sigma;  // empty means "not provided"
  TraceKind kind = TraceKind::xy8_sweep;

  std::size_t size() const { return x.size(); }

  void validate() const {
    if (y.size() != x.size())
      throw InvalidArgument("CoherenceTrace: x and y length mismatch");
    if (!sigma.empty() && sigma.size() != x.size())
      throw InvalidArgument("CoherenceTrace: sigma length mismatch");
    for (std::size_t i = 1; i < x.size(); ++i)
      if (!(x[i] > x[i - 1]))
        throw InvalidArgument("CoherenceTrace: x must be strictly increasing");
    for (double s : sigma)
      if (!(s > 0.0)) throw InvalidArgument("CoherenceTrace: sigma must be > 0");
  }
};

/// Larmor angular frequency gamma_n * B0.
inline double larmor_omega(double gamma_n, double b0) {
  if (b0 < 0.0) throw InvalidArgument("larmor_omega: b0 must be >= 0");
  return gamma_n * b0;
}

}  // namespace nanonmr
