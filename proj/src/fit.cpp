#include "nanonmr/fit.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace nanonmr {

int FitResult::index(const std::string& name) const {
  for (std::size_t i = 0; i < names.size(); ++i)
    if (names[i] == name) return static_cast<int>(i);
  throw InvalidArgument("FitResult: unknown parameter '" + name + "'");
}

double FitResult::value(const std::string& name) const {
  return params[index(name)];
}

double FitResult::sigma(const std::string& name) const {
  return sigmas[index(name)];
}

namespace {

struct FreeView {
  std::vector<int> idx;  // free-parameter positions in the full vector
};

double chi2_of(const Eigen::VectorXd& r) { return r.squaredNorm(); }

Eigen::VectorXd residuals(const LeastSquaresProblem& p,
                          const Eigen::VectorXd& params) {
  Eigen::VectorXd yhat = p.predict(params);
  if (yhat.size() != p.y.size())
    throw InvalidArgument("lm_fit: predict() returned wrong length");
  Eigen::VectorXd r = p.y - yhat;
  if (p.sigma.size() > 0) r.array() /= p.sigma.array();
  return r;
}

/// Central-difference Jacobian of the residual vector w.r.t. free params.
Eigen::MatrixXd jacobian(const LeastSquaresProblem& p, const FreeView& fv,
                         const Eigen::VectorXd& params) {
  const int n_free = static_cast<int>(fv.idx.size());
  Eigen::MatrixXd jac(p.y.size(), n_free);
  constexpr double sqrt_eps = 1.4901161193847656e-08;
  for (int j = 0; j < n_free; ++j) {
    const int full = fv.idx[j];
    const double width = p.upper[full] - p.lower[full];
    const double h =
        sqrt_eps * std::max(std::abs(params[full]), 1e-6 * width);
    Eigen::VectorXd pp = params, pm = params;
    pp[full] = std::min(params[full] + h, p.upper[full]);
    pm[full] = std::max(params[full] - h, p.lower[full]);
    const double dh = pp[full] - pm[full];
    if (!(dh > 0.0))
      throw InvalidArgument("lm_fit: zero-width bounds for parameter '" +
                            p.names[full] + "'");
    jac.col(j) = (residuals(p, pm) - residuals(p, pp)) / dh;  // d r / d p
  }
  return jac;
}

std::string direction_string(const LeastSquaresProblem& p, const FreeView& fv,
                             const Eigen::VectorXd& v) {
  std::ostringstream os;
  for (int j = 0; j < v.size(); ++j) {
    if (std::abs(v[j]) < 0.05) continue;
    os << (v[j] >= 0 ? "+" : "-");
    os << std::abs(v[j]) << "*" << p.names[fv.idx[j]] << " ";
  }
  return os.str();
}

}  // namespace

FitResult lm_fit(const LeastSquaresProblem& p, const FitOptions& opt) {
  const int n_par = static_cast<int>(p.names.size());
  if (p.init.size() != n_par || p.lower.size() != n_par ||
      p.upper.size() != n_par || static_cast<int>(p.fixed.size()) != n_par)
    throw InvalidArgument("lm_fit: inconsistent problem dimensions");
  if (p.sigma.size() > 0 && p.sigma.size() != p.y.size())
    throw InvalidArgument("lm_fit: sigma length mismatch");

  FreeView fv;
  for (int i = 0; i < n_par; ++i) {
    if (p.fixed[i]) continue;
    if (!std::isfinite(p.lower[i]) || !std::isfinite(p.upper[i]))
      throw InvalidArgument("lm_fit: free parameter '" + p.names[i] +
                            "' needs finite bounds");
    if (p.init[i] < p.lower[i] || p.init[i] > p.upper[i])
      throw InvalidArgument("lm_fit: init for '" + p.names[i] +
                            "' outside bounds");
    fv.idx.push_back(i);
  }
  const int n_free = static_cast<int>(fv.idx.size());
  if (p.y.size() < n_free + 1)
    throw InvalidArgument("lm_fit: need at least n_free + 1 data points");

  Eigen::VectorXd params = p.init;
  Eigen::VectorXd r = residuals(p, params);
  double chi2 = chi2_of(r);
  double lambda = opt.lambda_init;
  bool converged = false;
  int iter = 0;
  int stall = 0;

  while (iter < opt.max_iterations && n_free > 0) {
    ++iter;
    Eigen::MatrixXd jac = jacobian(p, fv, params);
    Eigen::MatrixXd normal = jac.transpose() * jac;   // J^T W J
    Eigen::VectorXd grad = -jac.transpose() * r;      // J^T W (y - yhat)

    // Inner loop: raise damping until a step is accepted or damping
    // saturates (then we are at a stationary point numerically).
    bool accepted = false;
    while (!accepted && lambda < 1e12) {
      Eigen::MatrixXd damped = normal;
      for (int j = 0; j < n_free; ++j) {
        const double dj = std::max(normal(j, j), 1e-300);
        damped(j, j) = dj * (1.0 + lambda);
      }
      Eigen::VectorXd step = damped.ldlt().solve(grad);
      if (!step.allFinite()) {
        lambda *= opt.lambda_up;
        continue;
      }
      Eigen::VectorXd trial = params;
      for (int j = 0; j < n_free; ++j) {
        const int full = fv.idx[j];
        trial[full] =
            std::clamp(params[full] + step[j], p.lower[full], p.upper[full]);
      }
      Eigen::VectorXd r_trial = residuals(p, trial);
      const double chi2_trial = chi2_of(r_trial);
      if (chi2_trial <= chi2 && std::isfinite(chi2_trial)) {
        // Relative step and chi^2 progress, measured before updating.
        double rel_step = 0.0;
        for (int j = 0; j < n_free; ++j) {
          const int full = fv.idx[j];
          const double scale =
              std::max(std::abs(params[full]),
                       1e-6 * (p.upper[full] - p.lower[full]));
          rel_step = std::max(rel_step,
                              std::abs(trial[full] - params[full]) / scale);
        }
        const double rel_dchi2 =
            (chi2 - chi2_trial) / std::max(chi2, 1e-300);
        params = trial;
        r = std::move(r_trial);
        chi2 = chi2_trial;
        lambda *= opt.lambda_down;
        accepted = true;
        if (rel_step < opt.step_tol) {
          converged = true;
        } else if (rel_dchi2 < opt.chi2_tol) {
          if (++stall >= opt.chi2_stall_iterations) converged = true;
        } else {
          stall = 0;
        }
      } else {
        lambda *= opt.lambda_up;
      }
    }
    if (!accepted) converged = true;  // damping saturated: stationary point
    if (converged) break;
  }
  if (n_free == 0) converged = true;

  FitResult result;
  result.names = p.names;
  result.params = params;
  result.chi2 = chi2;
  result.n_iter = iter;
  result.converged = converged;
  result.n_data = static_cast<int>(p.y.size());
  result.sigmas = Eigen::VectorXd::Zero(n_par);
  result.covariance = Eigen::MatrixXd::Zero(n_par, n_par);

  if (n_free > 0) {
    Eigen::MatrixXd jac = jacobian(p, fv, params);
    Eigen::MatrixXd normal = jac.transpose() * jac;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(normal);
    const double max_eig = es.eigenvalues().maxCoeff();
    if (!(max_eig > 0.0) || es.eigenvalues().minCoeff() <= max_eig * 1e-14) {
      const Eigen::VectorXd null_dir = es.eigenvectors().col(0);
      throw FitDegeneracyError(
          "lm_fit: normal matrix singular; unconstrained direction " +
              direction_string(p, fv, null_dir),
          direction_string(p, fv, null_dir));
    }
    Eigen::MatrixXd cov_free = normal.inverse();
    if (p.sigma.size() == 0) {
      const int dof = std::max(1, result.n_data - n_free);
      cov_free *= chi2 / dof;
    }
    for (int a = 0; a < n_free; ++a)
      for (int b = 0; b < n_free; ++b)
        result.covariance(fv.idx[a], fv.idx[b]) = cov_free(a, b);
    for (int a = 0; a < n_free; ++a)
      result.sigmas[fv.idx[a]] =
          std::sqrt(std::max(0.0, cov_free(a, a)));
  }
  return result;
}

}  // namespace nanonmr
