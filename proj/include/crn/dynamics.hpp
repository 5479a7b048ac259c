#pragma once

// Mass-action vector field, its Jacobian, adaptive Dormand-Prince
// integration, and Newton refinement of equilibria inside a compatibility
// class.

#include <cstddef>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "crn/exact.hpp"
#include "crn/network.hpp"

namespace crn {

using DenseMatrix = std::vector<std::vector<double>>;  // row-major

/// dx/dt = Σ_e k_e x^{y_e} (y'-y)_e, with 0^0 = 1. Requires x ≥ 0.
std::vector<double> rhs(const MassActionSystem& sys, std::span<const double> x);

/// Analytic Jacobian of rhs. Requires x > 0.
DenseMatrix jacobian(const MassActionSystem& sys, std::span<const double> x);

struct IntegrateOptions {
  double t_end = 1.0;
  double rtol = 1e-9;
  double atol = 1e-14;
  std::size_t max_steps = 5'000'000;
  /// Output spacing; 0 records every accepted step.
  double dense_output_stride = 0.0;
};

struct TrajectoryMeta {
  std::size_t accepted_steps = 0;
  std::size_t rejected_steps = 0;
  std::size_t clamped_components = 0;
  double rtol = 0.0;
  double atol = 0.0;
};

struct Trajectory {
  std::vector<double> times;
  std::vector<std::vector<double>> states;
  TrajectoryMeta meta;
};

/// Integrates from x0 ≥ 0 over [0, t_end]. Components that dip into
/// (-atol, 0) are set to 0; a step that would go further below zero is
/// retried with a smaller step, and NegativeOvershoot is thrown once the step
/// size collapses.
Trajectory integrate(const MassActionSystem& sys, std::span<const double> x0, const IntegrateOptions& opts);

/// Damped Newton on rhs with updates confined to the stoichiometric subspace,
/// so the iterate stays in the seed's compatibility class. Succeeds when
/// ‖rhs‖∞ < tol.
std::vector<double> refine_equilibrium(const MassActionSystem& sys, std::span<const double> seed,
                                       double tol = 1e-12, int max_iter = 50);

/// max_t |c·x(t) - c·x(0)|; throws NotConserved unless c ⊥ every reaction
/// vector.
double conservation_drift(const Trajectory& traj, const ReactionNetwork& net, const RatVector& c);

/// CSV with header "t,<species...>" and one row per sample.
void write_trajectory_csv(std::ostream& out, const Trajectory& traj, const std::vector<std::string>& species);

struct TrajectoryTable {
  std::vector<std::string> species;
  Trajectory trajectory;
};

/// Reads the CSV written by write_trajectory_csv; throws InvalidArgument on
/// malformed input.
TrajectoryTable read_trajectory_csv(std::istream& in);

}  // namespace crn
