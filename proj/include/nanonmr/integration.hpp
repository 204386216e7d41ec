#pragma once

#include <functional>
#include <vector>

namespace nanonmr {

struct QuadratureResult {
  double value = 0.0;
  double abs_error = 0.0;
};

/// Adaptive Gauss-Kronrod integration of f over [a, b] (GSL QAG under the
/// hood). Interior breakpoints split the interval so that narrow spectral
/// features sitting far from the interval ends are not skipped by the
/// initial coarse sampling. Throws QuadratureError with the achieved
/// relative tolerance when the requested one cannot be met.
QuadratureResult integrate_adaptive(const std::function<double(double)>& f,
                                    double a, double b, double rel_tol,
                                    const std::vector<double>& breakpoints = {});

}  // namespace nanonmr
