#pragma once

// Linkage classes, strongly connected components, terminal components and
// weak reversibility of the complex graph.

#include <cstddef>
#include <span>
#include <vector>

#include "crn/network.hpp"

namespace crn {

/// Classes are numbered by their smallest vertex; each class lists its
/// vertices in increasing order.
struct Partition {
  std::vector<std::size_t> class_of;
  std::vector<std::vector<std::size_t>> classes;

  std::size_t size() const { return classes.size(); }
  friend bool operator==(const Partition&, const Partition&) = default;
};

struct SccDecomposition {
  Partition partition;
  std::vector<bool> terminal;  // per class: no edge leaves it

  friend bool operator==(const SccDecomposition&, const SccDecomposition&) = default;
};

/// Connected components of the undirected graph on `num_nodes` nodes.
Partition weak_components(std::size_t num_nodes, std::span<const Reaction> edges);

/// Strongly connected components (Tarjan) with terminal flags.
SccDecomposition strong_components(std::size_t num_nodes, std::span<const Reaction> edges);

Partition linkage_classes(const ReactionNetwork& net);
SccDecomposition strongly_connected_components(const ReactionNetwork& net);
std::vector<std::size_t> terminal_sccs(const ReactionNetwork& net);
bool is_weakly_reversible(const ReactionNetwork& net);

}  // namespace crn
