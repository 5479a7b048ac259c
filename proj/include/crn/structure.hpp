#pragma once

// Network-level structural analysis: stoichiometric matrix, deficiency and
// its linkage-class characterization, consistency, conservativity, and
// complex balance at a given state.

#include <cstddef>
#include <optional>
#include <span>
#include <variant>
#include <vector>

#include "crn/exact.hpp"
#include "crn/network.hpp"

namespace crn {

/// species × edges, columns are reaction vectors in edge order.
RatMatrix stoichiometric_matrix(const ReactionNetwork& net);

/// Reaction vectors of the given edges, as rational vectors.
std::vector<RatVector> reaction_vectors(const ReactionNetwork& net, std::span<const std::size_t> edges);
std::vector<RatVector> reaction_vectors(const ReactionNetwork& net);

struct DeficiencyReport {
  std::size_t num_vertices = 0;
  std::size_t num_linkage_classes = 0;
  std::size_t stoich_dim = 0;
  long deficiency = 0;  // |V| - ℓ - s
};

DeficiencyReport deficiency(const ReactionNetwork& net);

struct LinkageClassDiagnostic {
  std::vector<std::size_t> vertices;
  std::size_t affine_rank = 0;  // rank{y_i - y_first}
  bool affinely_independent = false;
  std::size_t subspace_dim = 0;  // rank of this class's reaction vectors
};

struct DeficiencyZeroDiagnostics {
  std::vector<LinkageClassDiagnostic> classes;
  bool subspaces_independent = false;  // Σ class ranks == total rank

  bool all_affinely_independent() const;
  bool deficiency_zero() const { return all_affinely_independent() && subspaces_independent; }
};

DeficiencyZeroDiagnostics deficiency_zero_diagnostics(const ReactionNetwork& net);

struct Consistent {
  RatVector lambda;  // per edge, ≥ 1, Σ λ_e (y'-y)_e = 0
};

struct Inconsistent {
  RatVector w;  // w·(y'-y) ≤ 0 on every edge, < 0 on at least one
};

using ConsistencyVerdict = std::variant<Consistent, Inconsistent>;

ConsistencyVerdict is_consistent(const ReactionNetwork& net);
bool verify_consistency(const ReactionNetwork& net, const ConsistencyVerdict& verdict);

/// Strictly positive c with cᵀ(y'-y) = 0 for every reaction, if one exists.
std::optional<RatVector> is_conservative(const ReactionNetwork& net);

/// Integer basis of the conservation laws {c : cᵀ(y'-y) = 0}.
std::vector<RatVector> conservation_laws(const ReactionNetwork& net);

struct ComplexBalanceCheck {
  bool balanced = false;
  std::vector<double> residuals;  // per vertex: outflow - inflow
};

ComplexBalanceCheck is_complex_balanced_state(const MassActionSystem& sys, std::span<const double> x);

}  // namespace crn
