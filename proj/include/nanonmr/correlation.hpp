#pragma once

#include <random>
#include <span>
#include <vector>

#include "nanonmr/filter.hpp"
#include "nanonmr/types.hpp"

namespace nanonmr {

/// Two XY8 blocks separated by a free-evolution delay tau_c.
struct CorrelationSequence {
  Xy8Sequence xy8;
  double tau_c = 0.0;  // s

  void validate() const {
    if (tau_c < 0.0) throw InvalidArgument("CorrelationSequence: tau_c must be >= 0");
  }
};

/// One rotating-frame field component: B(t) = a_x cos(wt) + a_y sin(wt).
struct CosineComponent {
  double omega = 0.0;  // rad/s, >= 0
  double a_x = 0.0;    // T
  double a_y = 0.0;    // T
};

/// Field that is an exact sum of cosine components; phase integrals
/// against the square-wave modulation are evaluated in closed form.
struct CosineField {
  std::vector<CosineComponent> components;
};

/// Field sampled on a uniform grid, linearly interpolated between
/// samples. max_omega declares the fastest contained frequency so the
/// sampling-density precondition can be checked.
struct SampledField {
  double t0 = 0.0;
  double dt = 0.0;
  std::vector<double> values;
  double max_omega = 0.0;  // 0 means no oscillatory content

  double value(double t) const;
};

/// In-phase and quadrature integrals of the unit-amplitude square-wave
/// modulation: Fc = int_0^{N tau} m(t) cos(wt) dt, Fs likewise with sin.
/// Fc^2 + Fs^2 equals the band filter G(w, tau).
struct FilterQuadratures {
  double fc = 0.0;
  double fs = 0.0;
};
FilterQuadratures filter_quadratures(double omega, double tau, int n_pulses);

struct PhaseIntegrals {
  double phi1 = 0.0;  // rad, first block
  double phi2 = 0.0;  // rad, second block
  double phi3 = 0.0;  // rad, free evolution over tau_c (includes gamma)
};

/// Sensor phases accumulated against one field realization. phi1 and
/// phi2 are exact for cosine fields; phi3 is the plain integral of
/// gamma*B over the delay window.
PhaseIntegrals phase_integrals(const CorrelationSequence& seq,
                               const CosineField& field, double gamma);

/// Sampled-field overload; exact for piecewise-linear fields. Throws
/// when the grid is coarser than 40 samples per period of max_omega.
PhaseIntegrals phase_integrals(const CorrelationSequence& seq,
                               const SampledField& field, double gamma);

/// One draw of the statistically polarized bath: Gaussian quadrature
/// amplitudes per line (variance b_rms^2 each), with the second-block
/// amplitudes decorrelated by exp(-separation/corr_time).
struct BathRealization {
  std::vector<CosineComponent> first_block;
  std::vector<CosineComponent> second_block;
};
BathRealization sample_bath_realization(std::span<const SpectralLine> lines,
                                        std::span<const double> corr_times,
                                        double block_separation,
                                        std::mt19937_64& rng);

struct CorrelationTrace {
  std::vector<double> tau_c;    // s
  std::vector<double> signal;   // <sigma_z> correlation signal
  std::vector<double> std_err;  // statistical error (0 for analytic)
};

/// Monte Carlo correlation signal over tau_c: ensemble average of the
/// full readout expression sin(phi1) sin(phi2) - sin(phi3) cos(phi1)
/// cos(phi2), sampled in antithetic (+B, -B) pairs so the phi3 term
/// averages to zero exactly. corr_times may be empty (frozen field) or
/// hold one decorrelation time per line (infinity allowed).
CorrelationTrace correlation_signal_mc(const Xy8Sequence& xy8,
                                       std::span<const SpectralLine> lines,
                                       std::span<const double> corr_times,
                                       std::span<const double> tau_c_values,
                                       double gamma_e, int n_samples,
                                       std::uint64_t seed);

/// Weak-signal closed form of the same trace:
///   sum_i gamma^2 b_i^2 G(w_i, tau) exp(-(N tau + tau_c)/T_i)
///         cos(w_i (N tau + tau_c)).
CorrelationTrace correlation_signal_analytic(
    const Xy8Sequence& xy8, std::span<const SpectralLine> lines,
    std::span<const double> corr_times, std::span<const double> tau_c_values,
    double gamma_e);

}  // namespace nanonmr
