#pragma once

#include <Eigen/Dense>
#include <array>
#include <vector>

#include "nanonmr/fit.hpp"
#include "nanonmr/types.hpp"

namespace nanonmr {

/// Spin-1 sublevels, in population-vector order.
enum class SpinState { plus_one = 0, zero = 1, minus_one = 2 };

SpinState spin_state_from_label(const std::string& label);
const char* to_label(SpinState s);

/// Symmetric three-level decay generator. gamma_p1 couples |+1> and |0>,
/// gamma_m1 couples |-1> and |0>, gamma_2 couples |+1> and |-1>. Columns
/// sum to zero, so populations are conserved.
struct RateMatrix {
  double gamma_p1 = 0.0;  // s^-1
  double gamma_m1 = 0.0;  // s^-1
  double gamma_2 = 0.0;   // s^-1
  Eigen::Matrix3d matrix = Eigen::Matrix3d::Zero();
};

RateMatrix build_rate_matrix(double gamma_p1, double gamma_m1, double gamma_2);

/// Population 3-vector over (m_s = +1, 0, -1); entries in [0,1], sum 1.
struct PopulationState {
  Eigen::Vector3d p = Eigen::Vector3d::Zero();

  static PopulationState pure(SpinState s) {
    PopulationState n;
    n.p[static_cast<int>(s)] = 1.0;
    return n;
  }

  void validate() const {
    for (int i = 0; i < 3; ++i)
      if (p[i] < -1e-12) throw InvalidArgument("PopulationState: negative population");
    if (std::abs(p.sum() - 1.0) > 1e-12)
      throw InvalidArgument("PopulationState: populations must sum to 1");
  }
};

/// n(t) = exp(Gamma t) n0 through the symmetric eigendecomposition.
PopulationState propagate(const PopulationState& n0, const RateMatrix& rm,
                          double t);

/// Eigenvalues of the decay matrix, sorted descending; the first is 0.
std::array<double, 3> eigen_rates(const RateMatrix& rm);

/// Effective relaxation time of a two-state subspace: 1/|lambda| of the
/// eigenmode that dominates the population difference of the pair.
double effective_t1(const RateMatrix& rm, SpinState a, SpinState b);

/// One relaxation curve: populations of `read` after preparing `prep`.
struct RelaxationCurve {
  SpinState prep = SpinState::zero;
  SpinState read = SpinState::zero;
  CoherenceTrace trace;  // x in s, y dimensionless populations
};

struct RelaxationFitResult {
  FitResult fit;
  RateMatrix rates;
  std::array<double, 3> eigenvalues{};  // s^-1, descending
  double t1 = 0.0;                      // s, for the {|0>,|-1>} subspace
  /// False when any rate's 1-sigma uncertainty exceeds its value.
  bool identifiable = true;
};

struct RelaxationFitOptions {
  /// Free a per-curve amplitude and offset (for unnormalized raw data).
  bool per_curve_nuisances = false;
  FitOptions engine;
};

/// Simultaneous fit of the three decay rates to a set of curves (the full
/// experiment uses all nine prep/read combinations).
RelaxationFitResult fit_relaxation_joint(
    const std::vector<RelaxationCurve>& curves,
    const std::array<double, 3>& init_rates,
    const RelaxationFitOptions& options = {});

}  // namespace nanonmr
