#pragma once

// Linear Lyapunov functions V(x) = w·x for mass-action systems, and the
// Horn-Jackson function for complex-balanced systems.

#include <cstddef>
#include <span>
#include <vector>

#include "crn/exact.hpp"
#include "crn/network.hpp"

namespace crn {

enum class EdgeSign { Negative, Zero };

/// V(x) = w·x with w·(y'-y) ≤ 0 on every edge and < 0 on at least one, so
/// V strictly decreases along every positive trajectory for any rates.
struct LinearLyapunov {
  RatVector w;
  std::vector<EdgeSign> edge_signs;
};

/// Record of the choices made while building w for a deficiency-zero,
/// non-weakly-reversible network. The network's vertices are split into
/// part_one (a connected piece of a non-weakly-reversible linkage class
/// sitting upstream of a terminal component) and part_two (everything else).
struct ConstructionTrace {
  std::size_t linkage_class = 0;
  std::size_t terminal_scc = 0;
  std::vector<std::size_t> terminal_vertices;
  std::vector<std::size_t> part_one;
  std::vector<std::size_t> part_two;
  std::vector<std::size_t> part_one_edges;
  std::vector<std::size_t> part_two_edges;
  std::vector<std::size_t> crossing_edges;  // all run part_one -> terminal component
  std::size_t chosen_crossing_edge = 0;
  std::size_t dim_total = 0;
  std::size_t dim_part_one = 0;
  std::size_t dim_part_two = 0;
};

struct DeficiencyZeroLyapunov {
  LinearLyapunov lyapunov;
  ConstructionTrace trace;
};

/// Wraps a separating vector; throws NotASeparator naming the first edge that
/// violates w·(y'-y) ≤ 0, or when no edge is strict.
LinearLyapunov lyapunov_from_separator(const ReactionNetwork& net, const RatVector& w);

/// Builds w ∈ S_G orthogonal to the reaction vectors inside each part and
/// negative on the crossing edges. Throws NotApplicable for weakly
/// reversible networks and NotDeficiencyZero when δ > 0.
DeficiencyZeroLyapunov construct_w_deficiency_zero(const ReactionNetwork& net);

/// dV/dt = Σ_e k_e x^{y_e} w·(y'-y)_e at a strictly positive state.
double vdot(const MassActionSystem& sys, std::span<const double> w, std::span<const double> x);
double vdot(const MassActionSystem& sys, const RatVector& w, std::span<const double> x);

/// Σ x_i ln x_i - x_i - x_i ln x*_i.
double hj_value(std::span<const double> x, std::span<const double> xstar);
std::vector<double> hj_gradient(std::span<const double> x, std::span<const double> xstar);

}  // namespace crn
