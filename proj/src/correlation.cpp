#include "nanonmr/correlation.hpp"

#include <cmath>

namespace nanonmr {

namespace {

/// sin(x)/x with the removable singularity filled in.
double sinc(double x) {
  if (std::abs(x) < 1e-8) return 1.0 - x * x / 6.0;
  return std::sin(x) / x;
}

/// int_a^b cos(w t) dt and int_a^b sin(w t) dt in cancellation-free
/// product form.
void segment_integrals(double omega, double a, double b, double& ic,
                       double& is) {
  const double len = b - a;
  const double mid = 0.5 * (a + b);
  const double k = len * sinc(0.5 * omega * len);
  ic = k * std::cos(omega * mid);
  is = k * std::sin(omega * mid);
}

struct LinePrecomp {
  double omega = 0.0;
  double fc = 0.0, fs = 0.0;  // first-block quadrature integrals
  double gc = 0.0, gs = 0.0;  // gap integrals of cos, sin over [Nt, Nt+tc]
};

std::uint64_t splitmix64_next(std::uint64_t& state) {
  state += 0x9e3779b97f4a7c15ULL;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// Independent, reproducible substream seed for (point, chunk).
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t a, std::uint64_t b) {
  std::uint64_t s = seed;
  s ^= splitmix64_next(s) + a * 0x9e3779b97f4a7c15ULL;
  s ^= splitmix64_next(s) + b * 0xbf58476d1ce4e5b9ULL;
  return splitmix64_next(s);
}

}  // namespace

double SampledField::value(double t) const {
  if (values.size() < 2 || !(dt > 0.0))
    throw InvalidArgument("SampledField: need dt > 0 and >= 2 samples");
  const double pos = (t - t0) / dt;
  if (pos < -1e-9 || pos > static_cast<double>(values.size() - 1) + 1e-9)
    throw InvalidArgument("SampledField: t outside sampled window");
  const double clipped =
      std::clamp(pos, 0.0, static_cast<double>(values.size() - 1));
  const std::size_t i =
      std::min(static_cast<std::size_t>(clipped), values.size() - 2);
  const double frac = clipped - static_cast<double>(i);
  return values[i] * (1.0 - frac) + values[i + 1] * frac;
}

FilterQuadratures filter_quadratures(double omega, double tau, int n_pulses) {
  if (!(tau > 0.0)) throw InvalidArgument("filter_quadratures: tau must be > 0");
  if (n_pulses < 1)
    throw InvalidArgument("filter_quadratures: n_pulses must be >= 1");
  FilterQuadratures q;
  for (int m = 0; m < n_pulses; ++m) {
    const double sign = (m % 2 == 0) ? 1.0 : -1.0;
    double ic = 0.0, is = 0.0;
    segment_integrals(omega, m * tau, (m + 0.5) * tau, ic, is);
    q.fc += sign * ic;
    q.fs += sign * is;
    segment_integrals(omega, (m + 0.5) * tau, (m + 1.0) * tau, ic, is);
    q.fc -= sign * ic;
    q.fs -= sign * is;
  }
  return q;
}

PhaseIntegrals phase_integrals(const CorrelationSequence& seq,
                               const CosineField& field, double gamma) {
  seq.validate();
  const double tau = seq.xy8.tau;
  const int n_pulses = seq.xy8.n_pulses();
  const double block = seq.xy8.total_time();
  const double delta = block + seq.tau_c;

  PhaseIntegrals out;
  for (const CosineComponent& c : field.components) {
    if (c.omega < 0.0)
      throw InvalidArgument("CosineComponent: omega must be >= 0");
    const FilterQuadratures q = filter_quadratures(c.omega, tau, n_pulses);
    out.phi1 += gamma * (c.a_x * q.fc + c.a_y * q.fs);
    // Second block sees the same waveform advanced by N tau + tau_c.
    const double cd = std::cos(c.omega * delta);
    const double sd = std::sin(c.omega * delta);
    out.phi2 += gamma * (c.a_x * (q.fc * cd - q.fs * sd) +
                         c.a_y * (q.fs * cd + q.fc * sd));
    double gc = 0.0, gs = 0.0;
    segment_integrals(c.omega, block, block + seq.tau_c, gc, gs);
    out.phi3 += gamma * (c.a_x * gc + c.a_y * gs);
  }
  return out;
}

PhaseIntegrals phase_integrals(const CorrelationSequence& seq,
                               const SampledField& field, double gamma) {
  seq.validate();
  if (field.values.size() < 2 || !(field.dt > 0.0))
    throw InvalidArgument("SampledField: need dt > 0 and >= 2 samples");
  if (field.max_omega > 0.0) {
    const double period = 2.0 * std::numbers::pi / field.max_omega;
    if (field.dt > period / 40.0)
      throw InvalidArgument(
          "SampledField: undersampled, need >= 40 samples per period of "
          "max_omega");
  }

  const double tau = seq.xy8.tau;
  const int n_pulses = seq.xy8.n_pulses();
  const double block = seq.xy8.total_time();
  const double delta = block + seq.tau_c;

  // Trapezoid over the sample grid restricted to [a, b]; exact for the
  // piecewise-linear interpolant.
  auto integrate = [&field](double a, double b) {
    double acc = 0.0;
    const double start = (a - field.t0) / field.dt;
    const double stop = (b - field.t0) / field.dt;
    long i0 = static_cast<long>(std::ceil(start - 1e-9));
    long i1 = static_cast<long>(std::floor(stop + 1e-9));
    double prev_t = a, prev_v = field.value(a);
    for (long i = std::max(i0, 0L); i <= i1; ++i) {
      const double t = field.t0 + i * field.dt;
      if (t <= prev_t) continue;
      if (t > b) break;
      const double v = field.values[static_cast<std::size_t>(i)];
      acc += 0.5 * (prev_v + v) * (t - prev_t);
      prev_t = t;
      prev_v = v;
    }
    if (b > prev_t) acc += 0.5 * (prev_v + field.value(b)) * (b - prev_t);
    return acc;
  };

  PhaseIntegrals out;
  for (int m = 0; m < n_pulses; ++m) {
    const double sign = (m % 2 == 0) ? 1.0 : -1.0;
    const double first = integrate(m * tau, (m + 0.5) * tau);
    const double second = integrate((m + 0.5) * tau, (m + 1.0) * tau);
    out.phi1 += gamma * sign * (first - second);
    const double first2 = integrate(m * tau + delta, (m + 0.5) * tau + delta);
    const double second2 =
        integrate((m + 0.5) * tau + delta, (m + 1.0) * tau + delta);
    out.phi2 += gamma * sign * (first2 - second2);
  }
  out.phi3 = gamma * integrate(block, block + seq.tau_c);
  return out;
}

BathRealization sample_bath_realization(std::span<const SpectralLine> lines,
                                        std::span<const double> corr_times,
                                        double block_separation,
                                        std::mt19937_64& rng) {
  if (!corr_times.empty() && corr_times.size() != lines.size())
    throw InvalidArgument("sample_bath_realization: corr_times size mismatch");
  std::normal_distribution<double> normal(0.0, 1.0);
  BathRealization bath;
  bath.first_block.reserve(lines.size());
  bath.second_block.reserve(lines.size());
  for (std::size_t i = 0; i < lines.size(); ++i) {
    lines[i].validate();
    const double s = lines[i].b_rms;
    CosineComponent first{lines[i].omega_l, s * normal(rng), s * normal(rng)};
    double rho = 1.0;
    if (!corr_times.empty() && std::isfinite(corr_times[i])) {
      if (!(corr_times[i] > 0.0))
        throw InvalidArgument("sample_bath_realization: corr_time must be > 0");
      rho = std::exp(-block_separation / corr_times[i]);
    }
    const double fresh = std::sqrt(std::max(0.0, 1.0 - rho * rho));
    CosineComponent second{lines[i].omega_l,
                           rho * first.a_x + fresh * s * normal(rng),
                           rho * first.a_y + fresh * s * normal(rng)};
    bath.first_block.push_back(first);
    bath.second_block.push_back(second);
  }
  return bath;
}

CorrelationTrace correlation_signal_mc(const Xy8Sequence& xy8,
                                       std::span<const SpectralLine> lines,
                                       std::span<const double> corr_times,
                                       std::span<const double> tau_c_values,
                                       double gamma_e, int n_samples,
                                       std::uint64_t seed) {
  if (n_samples < 2 || n_samples % 2 != 0)
    throw InvalidArgument("correlation_signal_mc: n_samples must be even, >= 2");
  if (!corr_times.empty() && corr_times.size() != lines.size())
    throw InvalidArgument("correlation_signal_mc: corr_times size mismatch");

  const double tau = xy8.tau;
  const int n_pulses = xy8.n_pulses();
  const double block = xy8.total_time();
  const std::size_t n_lines = lines.size();

  std::vector<LinePrecomp> pre(n_lines);
  for (std::size_t i = 0; i < n_lines; ++i) {
    lines[i].validate();
    pre[i].omega = lines[i].omega_l;
    const FilterQuadratures q = filter_quadratures(lines[i].omega_l, tau, n_pulses);
    pre[i].fc = q.fc;
    pre[i].fs = q.fs;
  }

  CorrelationTrace trace;
  trace.tau_c.assign(tau_c_values.begin(), tau_c_values.end());
  trace.signal.resize(tau_c_values.size());
  trace.std_err.resize(tau_c_values.size());

  const long n_pairs = n_samples / 2;
  constexpr long kChunk = 4096;

  std::vector<double> cd(n_lines), sd(n_lines), rho(n_lines), fresh(n_lines);
  std::vector<double> b2c(n_lines), b2s(n_lines);

  for (std::size_t j = 0; j < tau_c_values.size(); ++j) {
    const double tau_c = tau_c_values[j];
    if (tau_c < 0.0)
      throw InvalidArgument("correlation_signal_mc: tau_c must be >= 0");
    const double delta = block + tau_c;
    for (std::size_t i = 0; i < n_lines; ++i) {
      cd[i] = std::cos(pre[i].omega * delta);
      sd[i] = std::sin(pre[i].omega * delta);
      rho[i] = 1.0;
      if (!corr_times.empty() && std::isfinite(corr_times[i])) {
        if (!(corr_times[i] > 0.0))
          throw InvalidArgument("correlation_signal_mc: corr_time must be > 0");
        rho[i] = std::exp(-delta / corr_times[i]);
      }
      fresh[i] = std::sqrt(std::max(0.0, 1.0 - rho[i] * rho[i]));
      // Second-block response to unit quadratures, phase-advanced.
      b2c[i] = pre[i].fc * cd[i] - pre[i].fs * sd[i];
      b2s[i] = pre[i].fs * cd[i] + pre[i].fc * sd[i];
      double gc = 0.0, gs = 0.0;
      segment_integrals(pre[i].omega, block, block + tau_c, gc, gs);
      pre[i].gc = gc;
      pre[i].gs = gs;
    }

    double sum = 0.0, sum_sq = 0.0;
    for (long chunk = 0; chunk * kChunk < n_pairs; ++chunk) {
      std::mt19937_64 rng(mix_seed(seed, j, static_cast<std::uint64_t>(chunk)));
      std::normal_distribution<double> normal(0.0, 1.0);
      const long count = std::min(kChunk, n_pairs - chunk * kChunk);
      for (long s = 0; s < count; ++s) {
        double phi1 = 0.0, phi2 = 0.0, phi3 = 0.0;
        for (std::size_t i = 0; i < n_lines; ++i) {
          const double sig = lines[i].b_rms;
          const double ax = sig * normal(rng);
          const double ay = sig * normal(rng);
          double bx = ax, by = ay;
          if (fresh[i] > 0.0) {
            bx = rho[i] * ax + fresh[i] * sig * normal(rng);
            by = rho[i] * ay + fresh[i] * sig * normal(rng);
          }
          phi1 += ax * pre[i].fc + ay * pre[i].fs;
          phi2 += bx * b2c[i] + by * b2s[i];
          phi3 += ax * pre[i].gc + ay * pre[i].gs;
        }
        phi1 *= gamma_e;
        phi2 *= gamma_e;
        phi3 *= gamma_e;
        // Full readout expression for the +B and -B members of the pair;
        // the phi3 cross term cancels exactly between them.
        const double plus = std::sin(phi1) * std::sin(phi2) -
                            std::sin(phi3) * std::cos(phi1) * std::cos(phi2);
        const double minus = std::sin(phi1) * std::sin(phi2) +
                             std::sin(phi3) * std::cos(phi1) * std::cos(phi2);
        const double pair = 0.5 * (plus + minus);
        sum += pair;
        sum_sq += pair * pair;
      }
    }
    const double mean = sum / static_cast<double>(n_pairs);
    double var = 0.0;
    if (n_pairs > 1)
      var = (sum_sq - static_cast<double>(n_pairs) * mean * mean) /
            (static_cast<double>(n_pairs) * (static_cast<double>(n_pairs) - 1));
    trace.signal[j] = mean;
    trace.std_err[j] = std::sqrt(std::max(0.0, var));
  }
  return trace;
}

CorrelationTrace correlation_signal_analytic(
    const Xy8Sequence& xy8, std::span<const SpectralLine> lines,
    std::span<const double> corr_times, std::span<const double> tau_c_values,
    double gamma_e) {
  if (!corr_times.empty() && corr_times.size() != lines.size())
    throw InvalidArgument("correlation_signal_analytic: corr_times size mismatch");
  const double block = xy8.total_time();

  CorrelationTrace trace;
  trace.tau_c.assign(tau_c_values.begin(), tau_c_values.end());
  trace.signal.assign(tau_c_values.size(), 0.0);
  trace.std_err.assign(tau_c_values.size(), 0.0);

  for (std::size_t i = 0; i < lines.size(); ++i) {
    lines[i].validate();
    const double gb = gamma_e * lines[i].b_rms;
    const double amp =
        gb * gb * filter_g(lines[i].omega_l, xy8.tau, xy8.n_pulses());
    for (std::size_t j = 0; j < tau_c_values.size(); ++j) {
      const double delta = block + tau_c_values[j];
      double env = 1.0;
      if (!corr_times.empty() && std::isfinite(corr_times[i]))
        env = std::exp(-delta / corr_times[i]);
      trace.signal[j] += amp * env * std::cos(lines[i].omega_l * delta);
    }
  }
  return trace;
}

}  // namespace nanonmr
