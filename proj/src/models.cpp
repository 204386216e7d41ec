#include "nanonmr/models.hpp"

#include <algorithm>
#include <cmath>

#include "nanonmr/filter.hpp"

namespace nanonmr {

namespace {

constexpr double kPi = std::numbers::pi;

const std::vector<std::string> kXy8SingleNames = {
    "omega_l", "b_rms", "t2", "n", "scale", "offset"};
const std::vector<std::string> kXy8DualNames = {
    "omega_lh", "omega_lf", "b_h", "b_f", "t2", "n", "scale", "offset"};
const std::vector<std::string> kCorrNames = {
    "a_h", "a_f", "t_coor_h", "t_coor_f", "omega_lh",
    "omega_lf", "phi_h", "phi_f", "scale", "offset"};
const std::vector<std::string> kRabiNames = {"alpha0", "alpha1", "omega",
                                             "phi", "scale", "offset"};
const std::vector<std::string> kLinearNames = {"intercept", "slope", "scale",
                                               "offset"};

/// Parameters that may silently stay at a conventional default when the
/// caller neither frees nor fixes them.
std::optional<double> conventional_default(const std::string& name) {
  if (name == "n") return 1.0;
  if (name == "scale") return 1.0;
  if (name == "offset") return 0.0;
  if (name == "phi" || name == "phi_h" || name == "phi_f") return 0.0;
  return std::nullopt;
}

std::pair<double, double> default_bounds(const std::string& name, double init,
                                         const CoherenceTrace& data) {
  if (name == "n") return {0.5, 3.0};
  if (name.rfind("phi", 0) == 0) return {-2.0 * kPi, 2.0 * kPi};
  if (name.rfind("omega", 0) == 0)
    return {init * 0.2, init * 5.0};
  if (name == "b_rms" || name == "b_h" || name == "b_f")
    return {0.0, std::max(init * 50.0, 1e-9)};
  if (name == "t2" || name == "t_coor_h" || name == "t_coor_f")
    return {init * 1e-2, init * 1e3};
  // Amplitude- and offset-like parameters: generous window around the
  // initial value, scaled by the data range.
  double span = 0.0;
  if (!data.y.empty()) {
    auto [lo, hi] = std::minmax_element(data.y.begin(), data.y.end());
    span = *hi - *lo;
  }
  const double w = 10.0 * (std::abs(init) + std::max(span, 1.0));
  return {init - w, init + w};
}

}  // namespace

ModelKind model_kind_from_string(const std::string& s) {
  if (s == "xy8_single") return ModelKind::xy8_single;
  if (s == "xy8_dual") return ModelKind::xy8_dual;
  if (s == "corr_dual_cosine") return ModelKind::corr_dual_cosine;
  if (s == "rabi") return ModelKind::rabi;
  if (s == "linear") return ModelKind::linear;
  throw InvalidArgument("unknown model kind '" + s + "'");
}

const char* to_string(ModelKind kind) {
  switch (kind) {
    case ModelKind::xy8_single: return "xy8_single";
    case ModelKind::xy8_dual: return "xy8_dual";
    case ModelKind::corr_dual_cosine: return "corr_dual_cosine";
    case ModelKind::rabi: return "rabi";
    case ModelKind::linear: return "linear";
  }
  throw InvalidArgument("unknown model kind");
}

const std::vector<std::string>& model_parameter_names(ModelKind kind) {
  switch (kind) {
    case ModelKind::xy8_single: return kXy8SingleNames;
    case ModelKind::xy8_dual: return kXy8DualNames;
    case ModelKind::corr_dual_cosine: return kCorrNames;
    case ModelKind::rabi: return kRabiNames;
    case ModelKind::linear: return kLinearNames;
  }
  throw InvalidArgument("unknown model kind");
}

double model_xy8_single(double tau, double omega_l, double b_rms, double t2,
                        double n, int k, double gamma_e) {
  const Xy8Sequence seq(k, tau);
  const SpectralLine line{omega_l, b_rms};
  return coherence_lines(seq, gamma_e, std::span(&line, 1), {t2, n});
}

double model_xy8_dual(double tau, double omega_lh, double omega_lf, double b_h,
                      double b_f, double t2, double n, int k, double gamma_e) {
  const Xy8Sequence seq(k, tau);
  const SpectralLine lines[2] = {{omega_lh, b_h}, {omega_lf, b_f}};
  return coherence_lines(seq, gamma_e, std::span(lines, 2), {t2, n});
}

double model_corr_dual_cosine(double tau_c, double a_h, double a_f, double t_h,
                              double t_f, double omega_lh, double omega_lf,
                              double phi_h, double phi_f) {
  return a_h * std::exp(-tau_c / t_h) * std::cos(omega_lh * tau_c + phi_h) +
         a_f * std::exp(-tau_c / t_f) * std::cos(omega_lf * tau_c + phi_f);
}

double model_rabi(double t, double alpha0, double alpha1, double omega,
                  double phi) {
  return 0.5 * (alpha0 + alpha1) +
         0.5 * (alpha0 - alpha1) * std::cos(omega * t + phi);
}

double model_linear(double x, double intercept, double slope) {
  return intercept + slope * x;
}

double model_eval(const ModelSpec& spec, double x, const Eigen::VectorXd& p) {
  switch (spec.kind) {
    case ModelKind::xy8_single:
      return p[4] * model_xy8_single(x, p[0], p[1], p[2], p[3], spec.k,
                                     spec.gamma_e) + p[5];
    case ModelKind::xy8_dual:
      return p[6] * model_xy8_dual(x, p[0], p[1], p[2], p[3], p[4], p[5],
                                   spec.k, spec.gamma_e) + p[7];
    case ModelKind::corr_dual_cosine:
      return p[8] * model_corr_dual_cosine(x, p[0], p[1], p[2], p[3], p[4],
                                           p[5], p[6], p[7]) + p[9];
    case ModelKind::rabi:
      return p[4] * model_rabi(x, p[0], p[1], p[2], p[3]) + p[5];
    case ModelKind::linear:
      return p[2] * model_linear(x, p[0], p[1]) + p[3];
  }
  throw InvalidArgument("unknown model kind");
}

FitResult fit_curve(const ModelSpec& spec, const CoherenceTrace& data,
                    const std::map<std::string, double>& init,
                    const FitOptions& options) {
  data.validate();
  const std::vector<std::string>& names = model_parameter_names(spec.kind);

  LeastSquaresProblem problem;
  problem.names = names;
  const int n_par = static_cast<int>(names.size());
  problem.init.resize(n_par);
  problem.lower.resize(n_par);
  problem.upper.resize(n_par);
  problem.fixed.assign(n_par, true);

  for (const auto& [name, value] : init)
    if (std::find(names.begin(), names.end(), name) == names.end())
      throw InvalidArgument("fit_curve: unknown parameter '" + name + "'");
  for (const auto& [name, value] : spec.fixed)
    if (std::find(names.begin(), names.end(), name) == names.end())
      throw InvalidArgument("fit_curve: unknown fixed parameter '" + name + "'");

  for (int i = 0; i < n_par; ++i) {
    const std::string& name = names[i];
    const auto init_it = init.find(name);
    const auto fixed_it = spec.fixed.find(name);
    if (init_it != init.end() && fixed_it != spec.fixed.end())
      throw InvalidArgument("fit_curve: parameter '" + name +
                            "' both free and fixed");
    if (init_it != init.end()) {
      problem.init[i] = init_it->second;
      problem.fixed[i] = false;
    } else if (fixed_it != spec.fixed.end()) {
      problem.init[i] = fixed_it->second;
    } else if (auto dflt = conventional_default(name)) {
      problem.init[i] = *dflt;
    } else {
      throw InvalidArgument("fit_curve: parameter '" + name +
                            "' needs an initial value or a fixed value");
    }
    auto bounds_it = spec.bounds.find(name);
    const auto [lo, hi] = bounds_it != spec.bounds.end()
                              ? bounds_it->second
                              : default_bounds(name, problem.init[i], data);
    problem.lower[i] = lo;
    problem.upper[i] = hi;
  }

  problem.y = Eigen::Map<const Eigen::VectorXd>(data.y.data(), data.y.size());
  if (!data.sigma.empty())
    problem.sigma =
        Eigen::Map<const Eigen::VectorXd>(data.sigma.data(), data.sigma.size());
  problem.predict = [&spec, &data](const Eigen::VectorXd& p) {
    Eigen::VectorXd yhat(data.x.size());
    for (std::size_t i = 0; i < data.x.size(); ++i)
      yhat[i] = model_eval(spec, data.x[i], p);
    return yhat;
  };
  return lm_fit(problem, options);
}

std::map<std::string, double> xy8_initial_guess(const CoherenceTrace& data,
                                                int k, double gamma_e) {
  data.validate();
  const std::size_t n = data.size();
  if (n < 6) throw InvalidArgument("xy8_initial_guess: trace too short");
  const int n_pulses = 8 * k;

  // Dip location from a 5-point moving average.
  std::size_t dip = 2;
  double dip_value = std::numeric_limits<double>::max();
  for (std::size_t i = 2; i + 2 < n; ++i) {
    double avg = 0.0;
    for (std::size_t j = i - 2; j <= i + 2; ++j) avg += data.y[j];
    avg /= 5.0;
    if (avg < dip_value) {
      dip_value = avg;
      dip = i;
    }
  }
  const double tau_dip = data.x[dip];
  const double omega_l = kPi / tau_dip;

  // Envelope at the largest tau gives T2 (n = 1 assumed).
  const double tail = std::clamp(data.y[n - 1], 1e-3, 0.999);
  const double t2 = n_pulses * data.x[n - 1] / (-std::log(tail));

  // Dip depth against the local background, inverted through the
  // resonance peak value of the filter.
  const double bg = std::exp(-n_pulses * tau_dip / t2);
  const double depth = std::clamp(dip_value / bg, 1e-6, 0.9999);
  const double g_peak =
      4.0 * n_pulses * n_pulses * tau_dip * tau_dip / (kPi * kPi);
  const double b_rms = std::sqrt(-2.0 * std::log(depth) / g_peak) / gamma_e;

  return {{"omega_l", omega_l}, {"b_rms", b_rms}, {"t2", t2}};
}

}  // namespace nanonmr
