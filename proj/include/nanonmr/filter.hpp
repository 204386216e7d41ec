#pragma once

#include <functional>
#include <span>
#include <vector>

#include "nanonmr/types.hpp"

namespace nanonmr {

/// One delta line in the field power spectrum: Larmor angular frequency
/// and RMS field amplitude seen by the sensor.
struct SpectralLine {
  double omega_l = 0.0;  // rad/s
  double b_rms = 0.0;    // T

  void validate() const {
    if (!(omega_l > 0.0)) throw InvalidArgument("SpectralLine: omega_l must be > 0");
    if (b_rms < 0.0) throw InvalidArgument("SpectralLine: b_rms must be >= 0");
  }
};

/// Stretched-exponential sensor decoherence exp(-(t/T2)^n).
struct DecoherenceBackground {
  double t2 = 0.0;  // s
  double n = 1.0;

  void validate() const {
    if (!(t2 > 0.0)) throw InvalidArgument("DecoherenceBackground: t2 must be > 0");
    if (!(n > 0.0)) throw InvalidArgument("DecoherenceBackground: n must be > 0");
  }

  double factor(double t) const;
};

/// XY8 band filter G(omega, tau) in s^2:
///   16 sin^4(w tau/4) sin^2(N w tau/2) / (w^2 cos^2(w tau/2)).
/// Even in omega, >= 0. The removable 0/0 points at omega -> 0 and at odd
/// multiples of pi/tau (even N) are evaluated by series expansion.
double filter_g(double omega, double tau, int n_pulses);

/// Square-wave modulation function of the XY8 sequence, +/-gamma on
/// alternating half-intervals of tau; boundary points belong to the left
/// interval. Domain [0, N tau].
double modulation_g(double t, double tau, int n_pulses, double gamma);

/// Coherence after an XY8 sequence for a set of delta spectral lines on a
/// stretched-exponential background:
///   exp(-(N tau/T2)^n) * prod_i exp(-gamma^2 b_i^2 G(omega_i, tau) / 2).
double coherence_lines(const Xy8Sequence& seq, double gamma_e,
                       std::span<const SpectralLine> lines,
                       const DecoherenceBackground& bg);

struct QuadratureSpec {
  double rel_tol = 1e-8;
  /// Upper integration limit; values below 20*pi/tau are raised to it.
  double omega_max = 0.0;
  /// Interior points the integrator must not skip (line centers etc.).
  std::vector<double> breakpoints;
};

/// Coherence for a general one-sided-even power spectrum S_B(omega)
/// [T^2 s / (rad/s)], integrated adaptively:
///   exp(-gamma^2/(2 pi) * int_0^wmax G(w) S_B(w) dw) * background.
double coherence_spectrum(const Xy8Sequence& seq, double gamma_e,
                          const std::function<double(double)>& s_b,
                          const DecoherenceBackground& bg,
                          const QuadratureSpec& quad = {});

}  // namespace nanonmr
