#include "nanonmr/sensitivity.hpp"

#include <cmath>

namespace nanonmr {

namespace {

/// Golden-section minimization on [a, b] to the given relative tolerance.
template <typename F>
double golden_min(F f, double a, double b, double rel_tol) {
  constexpr double phi = 0.6180339887498949;
  double x1 = b - phi * (b - a);
  double x2 = a + phi * (b - a);
  double f1 = f(x1), f2 = f(x2);
  while ((b - a) > rel_tol * (std::abs(a) + std::abs(b))) {
    if (f1 < f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - phi * (b - a);
      f1 = f(x1);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + phi * (b - a);
      f2 = f(x2);
    }
  }
  return 0.5 * (a + b);
}

}  // namespace

double sigma_p(double total_time, double tau, double t_ir, double contrast,
               double alpha_avg) {
  if (!(total_time > 0.0) || !(tau + t_ir > 0.0))
    throw InvalidArgument("sigma_p: times must be > 0");
  if (!(contrast > 0.0) || !(alpha_avg > 0.0))
    throw InvalidArgument("sigma_p: contrast and alpha_avg must be > 0");
  return std::sqrt((tau + t_ir) / total_time) / (contrast * std::sqrt(alpha_avg));
}

double eta_b(double tau, const SensorParams& sensor) {
  if (!(tau > 0.0)) throw InvalidArgument("eta_b: tau must be > 0");
  sensor.validate();
  const double c_tau = std::exp(-std::pow(tau / sensor.t2, sensor.stretch_n));
  return 2.0 / (sensor.gamma_e * c_tau) / std::sqrt(tau) *
         std::sqrt((tau + sensor.t_ir) / tau) /
         (sensor.contrast_c * std::sqrt(sensor.alpha_avg));
}

double tau_opt(double t2, double t_ir) {
  if (!(t2 > 0.0)) throw InvalidArgument("tau_opt: t2 must be > 0");
  if (t_ir < 0.0) throw InvalidArgument("tau_opt: t_ir must be >= 0");
  return 0.25 * (std::sqrt(t2 * t2 + 12.0 * t2 * t_ir + 4.0 * t_ir * t_ir) +
                 t2 - 2.0 * t_ir);
}

double tau_opt_numeric(const SensorParams& sensor) {
  sensor.validate();
  auto objective = [&](double tau) { return eta_b(tau, sensor); };
  // Bracket the minimum with a coarse logarithmic scan first.
  const double lo = sensor.t2 * 1e-3;
  const double hi = sensor.t2 * 1e2;
  double best_x = lo, best_f = objective(lo);
  constexpr int kScan = 200;
  for (int i = 1; i <= kScan; ++i) {
    const double x = lo * std::pow(hi / lo, static_cast<double>(i) / kScan);
    const double f = objective(x);
    if (f < best_f) {
      best_f = f;
      best_x = x;
    }
  }
  const double step = std::pow(hi / lo, 1.0 / kScan);
  return golden_min(objective, best_x / step, best_x * step, 1e-7);
}

double single_spin_bmax(double gamma_s, double d) {
  if (!(gamma_s > 0.0) || !(d > 0.0))
    throw InvalidArgument("single_spin_bmax: gamma_s and d must be > 0");
  return PhysicalConstants::mu0_over_4pi * gamma_s * PhysicalConstants::hbar /
         (d * d * d);
}

double single_spin_threshold(double gamma_s, double d) {
  return single_spin_bmax(gamma_s, d) * 1.0;  // * sqrt(1 s)
}

double dipolar_bz_correlation(double t, double gamma_s, double r, double n_z,
                              double omega) {
  if (!(r > 0.0)) throw InvalidArgument("dipolar_bz_correlation: r must be > 0");
  if (std::abs(n_z) > 1.0 + 1e-12)
    throw InvalidArgument("dipolar_bz_correlation: |n_z| must be <= 1");
  const double b = PhysicalConstants::mu0_over_4pi * gamma_s *
                   PhysicalConstants::hbar / (r * r * r);
  const double nz2 = n_z * n_z;
  const double stat = (1.0 - 3.0 * nz2) * (1.0 - 3.0 * nz2);
  const double osc = 9.0 * (1.0 - nz2) * nz2;
  return 0.25 * b * b * (stat + osc * std::cos(omega * t));
}

SensitivityBudget sensitivity_budget(const SensorParams& sensor) {
  sensor.validate();
  SensitivityBudget budget;
  budget.sensor = sensor;
  budget.tau_opt = sensor.stretch_n == 1.0 ? tau_opt(sensor.t2, sensor.t_ir)
                                           : tau_opt_numeric(sensor);
  budget.eta = eta_b(budget.tau_opt, sensor);
  budget.sigma_p_per_shot =
      sigma_p(budget.tau_opt + sensor.t_ir, budget.tau_opt, sensor.t_ir,
              sensor.contrast_c, sensor.alpha_avg);
  return budget;
}

}  // namespace nanonmr
