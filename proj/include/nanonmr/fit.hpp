#pragma once

#include <Eigen/Dense>
#include <functional>
#include <string>
#include <vector>

#include "nanonmr/errors.hpp"

namespace nanonmr {

struct FitOptions {
  double lambda_init = 1e-3;
  double lambda_up = 10.0;    // applied when a step is rejected
  double lambda_down = 0.3;   // applied when a step is accepted
  int max_iterations = 500;
  double step_tol = 1e-9;     // relative parameter step
  double chi2_tol = 1e-12;    // relative chi^2 change
  int chi2_stall_iterations = 3;
};

struct FitResult {
  std::vector<std::string> names;
  Eigen::VectorXd params;
  Eigen::VectorXd sigmas;       // zero for fixed parameters
  Eigen::MatrixXd covariance;   // zero rows/columns for fixed parameters
  double chi2 = 0.0;
  int n_iter = 0;
  bool converged = false;
  int n_data = 0;

  int index(const std::string& name) const;
  double value(const std::string& name) const;
  double sigma(const std::string& name) const;
};

/// Weighted least-squares problem over a full parameter vector; fixed
/// entries are carried through but never varied.
struct LeastSquaresProblem {
  std::vector<std::string> names;
  Eigen::VectorXd init;
  Eigen::VectorXd lower;
  Eigen::VectorXd upper;
  std::vector<bool> fixed;
  Eigen::VectorXd y;
  Eigen::VectorXd sigma;  // size 0 means unit weights
  std::function<Eigen::VectorXd(const Eigen::VectorXd&)> predict;
};

/// Damped Gauss-Newton minimization of sum(((y - predict(p)) / sigma)^2).
/// Damping lambda scales diag(J^T W J); covariance at the optimum is the
/// inverse of the undamped normal matrix. Without per-point sigmas the
/// covariance is scaled by the reduced chi^2. Returns best-so-far with
/// converged=false after max_iterations; throws FitDegeneracyError when
/// the normal matrix is singular.
FitResult lm_fit(const LeastSquaresProblem& problem,
                 const FitOptions& options = {});

}  // namespace nanonmr
