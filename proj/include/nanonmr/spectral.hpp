#pragma once

#include <complex>
#include <vector>

namespace nanonmr {

/// One-sided discrete spectrum of a uniformly sampled real trace.
struct Spectrum {
  std::vector<double> frequency;  // cycles per unit of dt
  std::vector<double> magnitude;  // |X_k|, unnormalized
  std::vector<std::complex<double>> bins;

  double bin_width() const {
    return frequency.size() > 1 ? frequency[1] - frequency[0] : 0.0;
  }
};

/// DFT magnitude with a rectangular window and the trace zero-padded to
/// pad_factor times its length (no power-of-two rounding).
Spectrum fft_magnitude(const std::vector<double>& samples, double dt,
                       int pad_factor = 4);

/// Index of the largest magnitude within +/- half_window of f0.
std::size_t peak_index_near(const Spectrum& spectrum, double f0,
                            double half_window);

}  // namespace nanonmr
