#include "nanonmr/filter.hpp"

#include <cmath>

#include "nanonmr/integration.hpp"

namespace nanonmr {

namespace {

constexpr double kPi = std::numbers::pi;

/// sin(N u)/sin(u) for |u| << 1, 4th-order Taylor about u = 0.
double dirichlet_ratio_series(double u, int n) {
  const double nn = static_cast<double>(n) * n;
  const double u2 = u * u;
  const double c2 = -(nn - 1.0) / 6.0;
  const double c4 = nn * nn / 120.0 - nn / 36.0 + 7.0 / 360.0;
  return n * (1.0 + c2 * u2 + c4 * u2 * u2);
}

}  // namespace

double DecoherenceBackground::factor(double t) const {
  validate();
  if (t < 0.0) throw InvalidArgument("DecoherenceBackground: t must be >= 0");
  return std::exp(-std::pow(t / t2, n));
}

double filter_g(double omega, double tau, int n_pulses) {
  if (!(tau > 0.0)) throw InvalidArgument("filter_g: tau must be > 0");
  if (n_pulses < 1) throw InvalidArgument("filter_g: n_pulses must be >= 1");

  const double w = std::abs(omega);
  const double n = static_cast<double>(n_pulses);
  const double wt = w * tau;

  // Small-argument limit: numerator vanishes as w^6, so G ~ N^2 w^4 tau^6 / 64.
  if (wt < 1e-6) {
    const double w2 = w * w;
    return n * n * w2 * w2 * tau * tau * tau * tau * tau * tau / 64.0;
  }

  const double x = 0.5 * wt;
  const double s4 = std::sin(0.25 * wt);
  const double numerator_quartic = 16.0 * s4 * s4 * s4 * s4;

  const double cx = std::cos(x);
  if (std::abs(cx) < 1e-6 && n_pulses % 2 == 0) {
    // 0/0 at odd multiples of pi/tau for even N; expand sin(Nu)/sin(u)
    // about the nearest one.
    const double m = std::round(x / kPi - 0.5);
    const double u = x - (m + 0.5) * kPi;
    const double ratio = dirichlet_ratio_series(u, n_pulses);
    return numerator_quartic * ratio * ratio / (w * w);
  }

  const double sn = std::sin(n * x);
  return numerator_quartic * sn * sn / (w * w * cx * cx);
}

double modulation_g(double t, double tau, int n_pulses, double gamma) {
  if (!(tau > 0.0)) throw InvalidArgument("modulation_g: tau must be > 0");
  if (n_pulses < 1) throw InvalidArgument("modulation_g: n_pulses must be >= 1");
  if (t < 0.0 || t > n_pulses * tau)
    throw InvalidArgument("modulation_g: t outside [0, N tau]");

  int m = static_cast<int>(std::floor(t / tau));
  if (m > n_pulses - 1) m = n_pulses - 1;
  const double u = t - m * tau;
  const double parity = (m % 2 == 0) ? 1.0 : -1.0;
  return (u <= 0.5 * tau) ? gamma * parity : -gamma * parity;
}

double coherence_lines(const Xy8Sequence& seq, double gamma_e,
                       std::span<const SpectralLine> lines,
                       const DecoherenceBackground& bg) {
  double c = bg.factor(seq.total_time());
  for (const SpectralLine& line : lines) {
    line.validate();
    const double gb = gamma_e * line.b_rms;
    c *= std::exp(-0.5 * gb * gb * filter_g(line.omega_l, seq.tau, seq.n_pulses()));
  }
  return c;
}

double coherence_spectrum(const Xy8Sequence& seq, double gamma_e,
                          const std::function<double(double)>& s_b,
                          const DecoherenceBackground& bg,
                          const QuadratureSpec& quad) {
  const double tau = seq.tau;
  const int n_pulses = seq.n_pulses();
  const double omega_max = std::max(quad.omega_max, 20.0 * kPi / tau);

  // The filter passband centers are predictable; hand them to the
  // integrator along with any caller-supplied feature locations.
  std::vector<double> breakpoints = quad.breakpoints;
  for (double w0 = kPi / tau; w0 < omega_max; w0 += 2.0 * kPi / tau)
    breakpoints.push_back(w0);

  auto integrand = [&](double w) {
    return filter_g(w, tau, n_pulses) * s_b(w);
  };
  const QuadratureResult integral =
      integrate_adaptive(integrand, 0.0, omega_max, quad.rel_tol, breakpoints);

  const double exponent =
      gamma_e * gamma_e / (2.0 * kPi) * integral.value;
  return std::exp(-exponent) * bg.factor(seq.total_time());
}

}  // namespace nanonmr
