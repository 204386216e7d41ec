#include "nanonmr/relaxation.hpp"

#include <cmath>

namespace nanonmr {

SpinState spin_state_from_label(const std::string& label) {
  if (label == "+1" || label == "p1" || label == "plus1") return SpinState::plus_one;
  if (label == "0" || label == "z" || label == "zero") return SpinState::zero;
  if (label == "-1" || label == "m1" || label == "minus1") return SpinState::minus_one;
  throw InvalidArgument("unknown spin state label '" + label + "'");
}

const char* to_label(SpinState s) {
  switch (s) {
    case SpinState::plus_one: return "+1";
    case SpinState::zero: return "0";
    case SpinState::minus_one: return "-1";
  }
  throw InvalidArgument("unknown spin state");
}

RateMatrix build_rate_matrix(double gamma_p1, double gamma_m1, double gamma_2) {
  if (gamma_p1 < 0.0 || gamma_m1 < 0.0 || gamma_2 < 0.0)
    throw InvalidArgument("build_rate_matrix: rates must be >= 0");
  RateMatrix rm;
  rm.gamma_p1 = gamma_p1;
  rm.gamma_m1 = gamma_m1;
  rm.gamma_2 = gamma_2;
  rm.matrix << -gamma_p1 - gamma_2, gamma_p1, gamma_2,
               gamma_p1, -gamma_p1 - gamma_m1, gamma_m1,
               gamma_2, gamma_m1, -gamma_m1 - gamma_2;
  return rm;
}

PopulationState propagate(const PopulationState& n0, const RateMatrix& rm,
                          double t) {
  if (t < 0.0) throw InvalidArgument("propagate: t must be >= 0");
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> es(rm.matrix);
  const Eigen::Vector3d decay = (es.eigenvalues().array() * t).exp();
  PopulationState out;
  out.p = es.eigenvectors() *
          (decay.asDiagonal() * (es.eigenvectors().transpose() * n0.p));
  return out;
}

std::array<double, 3> eigen_rates(const RateMatrix& rm) {
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> es(rm.matrix);
  // Ascending from Eigen; report descending (0 first).
  return {es.eigenvalues()[2], es.eigenvalues()[1], es.eigenvalues()[0]};
}

double effective_t1(const RateMatrix& rm, SpinState a, SpinState b) {
  if (a == b) throw InvalidArgument("effective_t1: need two distinct states");
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> es(rm.matrix);
  Eigen::Vector3d diff = Eigen::Vector3d::Zero();
  diff[static_cast<int>(a)] = 1.0;
  diff[static_cast<int>(b)] = -1.0;
  const Eigen::Vector3d coef = es.eigenvectors().transpose() * diff;
  int dominant = -1;
  double best = -1.0;
  for (int i = 0; i < 3; ++i) {
    if (std::abs(es.eigenvalues()[i]) < 1e-30) continue;  // conserved mode
    if (std::abs(coef[i]) > best) {
      best = std::abs(coef[i]);
      dominant = i;
    }
  }
  if (dominant < 0)
    throw InvalidArgument("effective_t1: all rates are zero");
  return 1.0 / std::abs(es.eigenvalues()[dominant]);
}

RelaxationFitResult fit_relaxation_joint(
    const std::vector<RelaxationCurve>& curves,
    const std::array<double, 3>& init_rates,
    const RelaxationFitOptions& options) {
  if (curves.empty())
    throw InvalidArgument("fit_relaxation_joint: no curves");
  std::size_t n_points = 0;
  for (const RelaxationCurve& c : curves) {
    c.trace.validate();
    n_points += c.trace.size();
  }

  LeastSquaresProblem problem;
  problem.names = {"gamma_p1", "gamma_m1", "gamma_2"};
  const double rate_scale =
      std::max({init_rates[0], init_rates[1], init_rates[2], 1.0});
  for (double r : init_rates) {
    if (r < 0.0)
      throw InvalidArgument("fit_relaxation_joint: init rates must be >= 0");
  }
  problem.init.resize(3);
  problem.init << init_rates[0], init_rates[1], init_rates[2];
  problem.lower = Eigen::Vector3d::Zero();
  problem.upper = Eigen::Vector3d::Constant(1e3 * rate_scale);
  problem.fixed = {false, false, false};

  if (options.per_curve_nuisances) {
    for (std::size_t c = 0; c < curves.size(); ++c) {
      problem.names.push_back("amp_" + std::to_string(c));
      problem.names.push_back("off_" + std::to_string(c));
    }
    const int n_par = static_cast<int>(problem.names.size());
    Eigen::VectorXd init(n_par), lower(n_par), upper(n_par);
    init.head<3>() = problem.init;
    lower.head<3>() = problem.lower;
    upper.head<3>() = problem.upper;
    for (std::size_t c = 0; c < curves.size(); ++c) {
      init[3 + 2 * c] = 1.0;
      init[3 + 2 * c + 1] = 0.0;
      lower[3 + 2 * c] = -10.0;
      upper[3 + 2 * c] = 10.0;
      lower[3 + 2 * c + 1] = -5.0;
      upper[3 + 2 * c + 1] = 5.0;
      problem.fixed.push_back(false);
      problem.fixed.push_back(false);
    }
    problem.init = init;
    problem.lower = lower;
    problem.upper = upper;
  }

  problem.y.resize(n_points);
  bool have_sigma = true;
  for (const RelaxationCurve& c : curves)
    if (c.trace.sigma.empty()) have_sigma = false;
  if (have_sigma) problem.sigma.resize(n_points);
  std::size_t pos = 0;
  for (const RelaxationCurve& c : curves) {
    for (std::size_t i = 0; i < c.trace.size(); ++i) {
      problem.y[pos] = c.trace.y[i];
      if (have_sigma) problem.sigma[pos] = c.trace.sigma[i];
      ++pos;
    }
  }

  const bool nuisances = options.per_curve_nuisances;
  problem.predict = [&curves, nuisances, n_points](const Eigen::VectorXd& p) {
    const RateMatrix rm = build_rate_matrix(p[0], p[1], p[2]);
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> es(rm.matrix);
    const Eigen::Matrix3d vec = es.eigenvectors();
    const Eigen::Vector3d val = es.eigenvalues();
    Eigen::VectorXd yhat(n_points);
    std::size_t pos = 0;
    for (std::size_t c = 0; c < curves.size(); ++c) {
      const int r = static_cast<int>(curves[c].read);
      const int q = static_cast<int>(curves[c].prep);
      const double amp = nuisances ? p[3 + 2 * c] : 1.0;
      const double off = nuisances ? p[3 + 2 * c + 1] : 0.0;
      for (double t : curves[c].trace.x) {
        double value = 0.0;
        for (int m = 0; m < 3; ++m)
          value += vec(r, m) * vec(q, m) * std::exp(val[m] * t);
        yhat[pos++] = amp * value + off;
      }
    }
    return yhat;
  };

  RelaxationFitResult out;
  out.fit = lm_fit(problem, options.engine);
  out.rates = build_rate_matrix(out.fit.params[0], out.fit.params[1],
                                out.fit.params[2]);
  out.eigenvalues = eigen_rates(out.rates);
  out.t1 = effective_t1(out.rates, SpinState::zero, SpinState::minus_one);
  for (int i = 0; i < 3; ++i)
    if (out.fit.sigmas[i] > std::abs(out.fit.params[i]))
      out.identifiable = false;
  return out;
}

}  // namespace nanonmr
