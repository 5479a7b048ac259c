#pragma once

// Reaction-network data model: species, complexes (integer points in species
// space), directed reactions between complexes, and mass-action rate data.

#include <compare>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace crn {

struct Species {
  std::size_t id = 0;
  std::string name;

  friend bool operator==(const Species&, const Species&) = default;
};

/// Nonnegative integer stoichiometric coefficients, one per species. The
/// all-zero complex is the empty complex.
struct Complex {
  std::vector<int> coeffs;

  bool is_zero() const;
  int molecularity() const;  // sum of coefficients

  friend bool operator==(const Complex&, const Complex&) = default;
  friend auto operator<=>(const Complex&, const Complex&) = default;
};

struct Reaction {
  std::size_t source = 0;
  std::size_t target = 0;

  friend bool operator==(const Reaction&, const Reaction&) = default;
};

/// A reaction written as its two complexes, used to build networks without
/// managing vertex indices by hand.
struct ReactionSpec {
  Complex source;
  Complex target;
};

/// Immutable reaction network (directed graph on complexes). Construction
/// does not validate; call validate_network() to check the graph invariants.
class ReactionNetwork {
 public:
  ReactionNetwork() = default;
  ReactionNetwork(std::vector<Species> species, std::vector<Complex> vertices,
                  std::vector<Reaction> edges);

  /// Builds a network from named species and reactions. Vertices are numbered
  /// by first appearance (source before target); repeated complexes share one
  /// vertex.
  static ReactionNetwork from_reactions(const std::vector<std::string>& species_names,
                                        std::span<const ReactionSpec> reactions);

  const std::vector<Species>& species() const { return species_; }
  const std::vector<Complex>& vertices() const { return vertices_; }
  const std::vector<Reaction>& edges() const { return edges_; }

  std::size_t num_species() const { return species_.size(); }
  std::size_t num_vertices() const { return vertices_.size(); }
  std::size_t num_edges() const { return edges_.size(); }

  std::optional<std::size_t> find_vertex(const Complex& c) const;
  std::optional<std::size_t> find_species(const std::string& name) const;
  std::vector<std::string> species_names() const;

  friend bool operator==(const ReactionNetwork&, const ReactionNetwork&) = default;

 private:
  std::vector<Species> species_;
  std::vector<Complex> vertices_;
  std::vector<Reaction> edges_;
};

enum class ViolationKind {
  DuplicateSpeciesName,
  SpeciesIdMismatch,
  WrongDimension,
  NegativeCoefficient,
  DuplicateVertex,
  EdgeIndexOutOfRange,
  SelfLoop,
  DuplicateEdge,
  IsolatedVertex,
};

std::string_view to_string(ViolationKind kind);

struct Violation {
  ViolationKind kind;
  std::size_t index;  // offending species, vertex, or edge index
  std::string message;

  friend bool operator==(const Violation&, const Violation&) = default;
};

struct ValidationReport {
  std::vector<Violation> violations;

  bool ok() const { return violations.empty(); }
  friend bool operator==(const ValidationReport&, const ValidationReport&) = default;
};

ValidationReport validate_network(const ReactionNetwork& net);

/// target - source for the given edge.
std::vector<int> reaction_vector(const ReactionNetwork& net, std::size_t edge);

/// Strictly positive rate constant per edge.
class RateAssignment {
 public:
  RateAssignment() = default;
  explicit RateAssignment(std::vector<double> k);

  static RateAssignment uniform(std::size_t num_edges, double k);

  const std::vector<double>& values() const { return k_; }
  std::size_t size() const { return k_.size(); }
  double operator[](std::size_t i) const { return k_[i]; }

  friend bool operator==(const RateAssignment&, const RateAssignment&) = default;

 private:
  std::vector<double> k_;
};

class MassActionSystem {
 public:
  MassActionSystem(ReactionNetwork network, RateAssignment rates);

  const ReactionNetwork& network() const { return network_; }
  const RateAssignment& rates() const { return rates_; }

 private:
  ReactionNetwork network_;
  RateAssignment rates_;
};

/// Human-readable complex, e.g. "X1 + 2 X2" or "0".
std::string format_complex(const ReactionNetwork& net, const Complex& c);

/// Shortest decimal text that reads back as exactly the same double.
std::string format_number(double value);

}  // namespace crn
