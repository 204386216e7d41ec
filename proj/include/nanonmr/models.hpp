#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "nanonmr/fit.hpp"
#include "nanonmr/types.hpp"

namespace nanonmr {

enum class ModelKind { xy8_single, xy8_dual, corr_dual_cosine, rabi, linear };

ModelKind model_kind_from_string(const std::string& s);
const char* to_string(ModelKind kind);

/// Parameter names of each model, in vector order. All models carry a
/// trailing (scale, offset) pair mapping the physical signal y to
/// scale*y + offset; both default to fixed (1, 0).
const std::vector<std::string>& model_parameter_names(ModelKind kind);

/// XY8 coherence with one delta line:
///   scale * exp(-(N tau/T2)^n) exp(-gamma^2 b^2 G(omega_l,tau)/2) + offset.
double model_xy8_single(double tau, double omega_l, double b_rms, double t2,
                        double n, int k, double gamma_e);

/// Two delta lines sharing the background envelope.
double model_xy8_dual(double tau, double omega_lh, double omega_lf, double b_h,
                      double b_f, double t2, double n, int k, double gamma_e);

/// Double decaying cosine over the correlation delay:
///   a_h e^{-tau_c/t_h} cos(w_h tau_c + phi_h)
///   + a_f e^{-tau_c/t_f} cos(w_f tau_c + phi_f).
double model_corr_dual_cosine(double tau_c, double a_h, double a_f, double t_h,
                              double t_f, double omega_lh, double omega_lf,
                              double phi_h, double phi_f);

/// Photon count of an optically detected Rabi oscillation:
///   (a0 + a1)/2 + (a0 - a1) cos(omega t + phi)/2.
double model_rabi(double t, double alpha0, double alpha1, double omega,
                  double phi);

double model_linear(double x, double intercept, double slope);

/// Parameterization of a fit: which model, which parameters are frozen,
/// and explicit bound overrides. Free parameters get finite default
/// bounds derived from their initial values.
struct ModelSpec {
  ModelKind kind = ModelKind::xy8_single;
  int k = 1;  // XY8 order, used by the xy8 models
  double gamma_e = gyromag::electron_sensor;
  std::map<std::string, double> fixed;
  std::map<std::string, std::pair<double, double>> bounds;
};

/// Evaluate the model at one abscissa for a full parameter vector in
/// model_parameter_names order.
double model_eval(const ModelSpec& spec, double x, const Eigen::VectorXd& p);

/// Weighted fit of the model to a trace. Parameters listed in `init` are
/// free; parameters in spec.fixed are frozen there; any remaining
/// parameter must have a conventional default (n=1, scale=1, offset=0,
/// phases 0) or an error is raised.
FitResult fit_curve(const ModelSpec& spec, const CoherenceTrace& data,
                    const std::map<std::string, double>& init,
                    const FitOptions& options = {});

/// Deterministic starting point for xy8 fits: dip position of a 5-point
/// moving average gives omega_l, the dip depth inverted through the
/// resonance closed form gives b_rms, the envelope at the largest tau
/// gives t2.
std::map<std::string, double> xy8_initial_guess(const CoherenceTrace& data,
                                                int k, double gamma_e);

}  // namespace nanonmr
