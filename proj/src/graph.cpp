#include "crn/graph.hpp"

#include <algorithm>
#include <limits>
#include <numeric>

namespace crn {

namespace {

constexpr std::size_t kUnset = std::numeric_limits<std::size_t>::max();

// Renumbers classes by smallest member so ids do not depend on traversal order.
Partition canonical(std::size_t num_nodes, const std::vector<std::size_t>& raw_label) {
  Partition p;
  p.class_of.assign(num_nodes, kUnset);
  std::vector<std::size_t> remap(num_nodes, kUnset);
  for (std::size_t v = 0; v < num_nodes; ++v) {
    std::size_t& id = remap[raw_label[v]];
    if (id == kUnset) {
      id = p.classes.size();
      p.classes.emplace_back();
    }
    p.class_of[v] = id;
    p.classes[id].push_back(v);
  }
  return p;
}

struct DisjointSet {
  std::vector<std::size_t> parent;
  explicit DisjointSet(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  std::size_t find(std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
};

}  // namespace

Partition weak_components(std::size_t num_nodes, std::span<const Reaction> edges) {
  DisjointSet ds(num_nodes);
  for (const auto& e : edges) ds.unite(e.source, e.target);
  std::vector<std::size_t> label(num_nodes);
  for (std::size_t v = 0; v < num_nodes; ++v) label[v] = ds.find(v);
  return canonical(num_nodes, label);
}

SccDecomposition strong_components(std::size_t num_nodes, std::span<const Reaction> edges) {
  std::vector<std::vector<std::size_t>> succ(num_nodes);
  for (const auto& e : edges) succ[e.source].push_back(e.target);
  // Sorted adjacency keeps the traversal independent of edge input order.
  for (auto& s : succ) std::sort(s.begin(), s.end());

  std::vector<std::size_t> index(num_nodes, kUnset), low(num_nodes, 0), label(num_nodes, kUnset);
  std::vector<bool> on_stack(num_nodes, false);
  std::vector<std::size_t> stack;
  std::size_t counter = 0, components = 0;

  // Iterative Tarjan: each frame is (vertex, next successor position).
  std::vector<std::pair<std::size_t, std::size_t>> frames;
  for (std::size_t root = 0; root < num_nodes; ++root) {
    if (index[root] != kUnset) continue;
    frames.push_back({root, 0});
    index[root] = low[root] = counter++;
    stack.push_back(root);
    on_stack[root] = true;
    while (!frames.empty()) {
      auto& [v, pos] = frames.back();
      if (pos < succ[v].size()) {
        std::size_t w = succ[v][pos++];
        if (index[w] == kUnset) {
          index[w] = low[w] = counter++;
          stack.push_back(w);
          on_stack[w] = true;
          frames.push_back({w, 0});
        } else if (on_stack[w]) {
          low[v] = std::min(low[v], index[w]);
        }
        continue;
      }
      std::size_t done = v;
      frames.pop_back();
      if (!frames.empty()) low[frames.back().first] = std::min(low[frames.back().first], low[done]);
      if (low[done] == index[done]) {
        std::size_t w;
        do {
          w = stack.back();
          stack.pop_back();
          on_stack[w] = false;
          label[w] = components;
        } while (w != done);
        ++components;
      }
    }
  }

  SccDecomposition d{canonical(num_nodes, label), {}};
  d.terminal.assign(d.partition.size(), true);
  for (const auto& e : edges)
    if (d.partition.class_of[e.source] != d.partition.class_of[e.target])
      d.terminal[d.partition.class_of[e.source]] = false;
  return d;
}

Partition linkage_classes(const ReactionNetwork& net) {
  return weak_components(net.num_vertices(), net.edges());
}

SccDecomposition strongly_connected_components(const ReactionNetwork& net) {
  return strong_components(net.num_vertices(), net.edges());
}

std::vector<std::size_t> terminal_sccs(const ReactionNetwork& net) {
  auto d = strongly_connected_components(net);
  std::vector<std::size_t> ids;
  for (std::size_t c = 0; c < d.partition.size(); ++c)
    if (d.terminal[c]) ids.push_back(c);
  return ids;
}

bool is_weakly_reversible(const ReactionNetwork& net) {
  auto d = strongly_connected_components(net);
  return std::all_of(d.terminal.begin(), d.terminal.end(), [](bool t) { return t; });
}

}  // namespace crn
