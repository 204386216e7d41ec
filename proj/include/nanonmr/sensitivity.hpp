#pragma once

#include "nanonmr/types.hpp"

namespace nanonmr {

/// Shot-noise uncertainty of one optically read population estimate
/// averaged over a total experiment time:
///   sigma_P = sqrt((tau + t_ir) / total_time) / (contrast sqrt(alpha_avg)).
double sigma_p(double total_time, double tau, double t_ir, double contrast,
               double alpha_avg);

/// AC-field sensitivity at interrogation time tau:
///   eta = 2 / (gamma exp(-(tau/T2)^n)) * tau^-1/2
///         * sqrt((tau + t_ir)/tau) / (C sqrt(alpha_avg)).
double eta_b(double tau, const SensorParams& sensor);

/// Optimal interrogation time for stretch exponent n = 1:
///   tau_m = (sqrt(T2^2 + 12 T2 t_ir + 4 t_ir^2) + T2 - 2 t_ir) / 4.
double tau_opt(double t2, double t_ir);

/// Numerical argmin of eta_b over tau (grid scan + golden section), used
/// for stretch exponents other than 1. Relative tolerance 1e-6.
double tau_opt_numeric(const SensorParams& sensor);

/// Peak field of a single spin at distance d along the sensor axis:
///   B_max = mu0 gamma_s hbar / (4 pi d^3).
double single_spin_bmax(double gamma_s, double d);

/// Sensitivity needed for SNR = 1 on that spin in 1 s of integration,
/// in T/sqrt(Hz); numerically equal to single_spin_bmax.
double single_spin_threshold(double gamma_s, double d);

/// Autocorrelation of the dipolar field z-component of a single spin-1/2
/// at distance r, direction cosine n_z to the sensor axis, precessing at
/// omega:  b^2/4 [ (1 - 3 n_z^2)^2 + 9 (1 - n_z^2) n_z^2 cos(omega t) ].
double dipolar_bz_correlation(double t, double gamma_s, double r, double n_z,
                              double omega);

/// Full sensitivity budget of one sensor at its optimal interrogation time.
struct SensitivityBudget {
  double eta = 0.0;               // T / sqrt(Hz)
  double tau_opt = 0.0;           // s
  double sigma_p_per_shot = 0.0;  // single-shot population uncertainty
  SensorParams sensor;            // inputs echoed
};

SensitivityBudget sensitivity_budget(const SensorParams& sensor);

}  // namespace nanonmr
