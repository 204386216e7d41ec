#include "nanonmr/spectral.hpp"

#include <fftw3.h>

#include <cmath>

#include "nanonmr/errors.hpp"

namespace nanonmr {

Spectrum fft_magnitude(const std::vector<double>& samples, double dt,
                       int pad_factor) {
  if (samples.size() < 2) throw InvalidArgument("fft_magnitude: need >= 2 samples");
  if (!(dt > 0.0)) throw InvalidArgument("fft_magnitude: dt must be > 0");
  if (pad_factor < 1) throw InvalidArgument("fft_magnitude: pad_factor must be >= 1");

  const std::size_t n = samples.size() * static_cast<std::size_t>(pad_factor);
  std::vector<double> in(n, 0.0);
  std::copy(samples.begin(), samples.end(), in.begin());
  std::vector<fftw_complex> out(n / 2 + 1);

  fftw_plan plan = fftw_plan_dft_r2c_1d(static_cast<int>(n), in.data(),
                                        out.data(), FFTW_ESTIMATE);
  if (!plan) throw Error("fft_magnitude: FFTW plan creation failed");
  fftw_execute(plan);
  fftw_destroy_plan(plan);

  Spectrum spectrum;
  spectrum.frequency.resize(out.size());
  spectrum.magnitude.resize(out.size());
  spectrum.bins.resize(out.size());
  const double df = 1.0 / (static_cast<double>(n) * dt);
  for (std::size_t k = 0; k < out.size(); ++k) {
    spectrum.frequency[k] = static_cast<double>(k) * df;
    spectrum.bins[k] = {out[k][0], out[k][1]};
    spectrum.magnitude[k] = std::abs(spectrum.bins[k]);
  }
  return spectrum;
}

std::size_t peak_index_near(const Spectrum& spectrum, double f0,
                            double half_window) {
  std::size_t best = 0;
  double best_mag = -1.0;
  bool found = false;
  for (std::size_t k = 0; k < spectrum.frequency.size(); ++k) {
    if (std::abs(spectrum.frequency[k] - f0) > half_window) continue;
    if (spectrum.magnitude[k] > best_mag) {
      best_mag = spectrum.magnitude[k];
      best = k;
      found = true;
    }
  }
  if (!found) throw InvalidArgument("peak_index_near: empty search window");
  return best;
}

}  // namespace nanonmr
