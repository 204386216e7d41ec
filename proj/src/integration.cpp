#include "nanonmr/integration.hpp"

#include <gsl/gsl_errno.h>
#include <gsl/gsl_integration.h>

#include <algorithm>
#include <cmath>
#include <memory>
#include <sstream>

#include "nanonmr/errors.hpp"

namespace nanonmr {

namespace {

struct WorkspaceDeleter {
  void operator()(gsl_integration_workspace* w) const {
    gsl_integration_workspace_free(w);
  }
};
using Workspace = std::unique_ptr<gsl_integration_workspace, WorkspaceDeleter>;

double call_fn(double x, void* params) {
  const auto* f = static_cast<const std::function<double(double)>*>(params);
  return (*f)(x);
}

const bool g_handler_off = [] {
  gsl_set_error_handler_off();
  return true;
}();

}  // namespace

QuadratureResult integrate_adaptive(const std::function<double(double)>& f,
                                    double a, double b, double rel_tol,
                                    const std::vector<double>& breakpoints) {
  if (!(b > a)) throw InvalidArgument("integrate_adaptive: need b > a");
  (void)g_handler_off;

  std::vector<double> edges;
  edges.push_back(a);
  for (double p : breakpoints)
    if (p > a && p < b) edges.push_back(p);
  edges.push_back(b);
  std::sort(edges.begin(), edges.end());

  constexpr std::size_t kLimit = 2000;
  Workspace ws(gsl_integration_workspace_alloc(kLimit));

  gsl_function gf;
  gf.function = &call_fn;
  gf.params = const_cast<std::function<double(double)>*>(&f);

  QuadratureResult total;
  bool rounding_limited = false;
  for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
    double value = 0.0, abserr = 0.0;
    int status = gsl_integration_qag(&gf, edges[i], edges[i + 1],
                                     /*epsabs=*/0.0, rel_tol, kLimit,
                                     GSL_INTEG_GAUSS61, ws.get(), &value, &abserr);
    if (status == GSL_EROUND || status == GSL_ETOL) {
      // Tolerance limited by round-off on this panel; keep the estimate and
      // judge the overall achieved tolerance at the end.
      rounding_limited = true;
    } else if (status != GSL_SUCCESS) {
      std::ostringstream msg;
      msg << "quadrature did not converge on [" << edges[i] << ", "
          << edges[i + 1] << "]: " << gsl_strerror(status);
      double achieved = std::abs(value) > 0.0 ? abserr / std::abs(value) : abserr;
      throw QuadratureError(msg.str(), achieved);
    }
    total.value += value;
    total.abs_error += abserr;
  }

  double scale = std::max(std::abs(total.value), 1e-300);
  double achieved = total.abs_error / scale;
  if (rounding_limited && achieved > 10.0 * rel_tol) {
    std::ostringstream msg;
    msg << "quadrature round-off limited; achieved relative tolerance "
        << achieved << " > requested " << rel_tol;
    throw QuadratureError(msg.str(), achieved);
  }
  return total;
}

}  // namespace nanonmr
