#pragma once

// Shared test helpers: fixture loading, random network generators and a few
// small independent oracles (plain long-long fraction arithmetic) so tests
// never check the library against itself.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "crn/network.hpp"
#include "crn/parser.hpp"

namespace fixtures {

inline std::string data_path(const std::string& name) { return std::string(CRN_TEST_DATA_DIR) + "/" + name; }

inline std::string read_text(const std::string& name) {
  std::ifstream in(data_path(name));
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

inline crn::ParsedNetwork load(const std::string& name) { return crn::parse_network(read_text(name)); }

inline const std::vector<std::string>& fixture_names() {
  static const std::vector<std::string> names = {"autocatalytic.crn", "modified_ivanova.crn", "chain.crn",
                                                 "triangle.crn",    "feed_reversible.crn",  "single.crn",
                                                 "reversible_pair.crn", "degradation.crn"};
  return names;
}

inline std::vector<std::string> species_names(std::size_t n) {
  static const char* base[] = {"A", "B", "C", "D", "E", "F", "G", "H", "I", "J", "K", "L"};
  std::vector<std::string> out;
  for (std::size_t i = 0; i < n; ++i) out.push_back(base[i]);
  return out;
}

inline crn::Complex random_complex(std::mt19937& rng, std::size_t n, int max_coeff) {
  std::uniform_int_distribution<int> coeff(0, max_coeff);
  crn::Complex c;
  c.coeffs.resize(n);
  for (auto& v : c.coeffs) v = coeff(rng);
  return c;
}

/// Valid network: distinct complexes, no self-loops, no repeated edges,
/// every vertex on some edge.
inline crn::ReactionNetwork random_network(std::mt19937& rng, std::size_t max_species = 4, std::size_t max_edges = 6,
                                           int max_coeff = 3) {
  std::uniform_int_distribution<std::size_t> ns(1, max_species), ne(1, max_edges);
  std::size_t n = ns(rng), m = ne(rng);
  std::vector<crn::ReactionSpec> specs;
  std::set<std::pair<crn::Complex, crn::Complex>> seen;
  for (int attempts = 0; specs.size() < m && attempts < 200; ++attempts) {
    auto s = random_complex(rng, n, max_coeff);
    auto t = random_complex(rng, n, max_coeff);
    if (s == t || !seen.insert({s, t}).second) continue;
    specs.push_back({s, t});
  }
  return crn::ReactionNetwork::from_reactions(species_names(n), specs);
}

inline std::vector<double> random_positive(std::mt19937& rng, std::size_t n, double lo = 0.05, double hi = 3.0) {
  std::uniform_real_distribution<double> d(lo, hi);
  std::vector<double> x(n);
  for (auto& v : x) v = d(rng);
  return x;
}

inline crn::RateAssignment random_rates(std::mt19937& rng, std::size_t m, double lo = 0.1, double hi = 5.0) {
  return crn::RateAssignment(random_positive(rng, m, lo, hi));
}

/// Deficiency-zero, non-weakly-reversible network built from linkage classes
/// that live on disjoint species blocks. Inside a class the vertices are
/// base + c_j e_j for distinct block species j (plus the base itself), so
/// they are affinely independent. The first class is a directed tree and
/// hence not strongly connected.
inline crn::ReactionNetwork random_deficiency_zero_non_wr(std::mt19937& rng) {
  std::uniform_int_distribution<int> num_classes(1, 3), block(1, 3), small(0, 2), step(1, 2), coin(0, 1);
  while (true) {
    int classes = num_classes(rng);
    std::vector<int> sizes;
    std::size_t n = 0;
    for (int c = 0; c < classes; ++c) {
      sizes.push_back(block(rng));
      n += static_cast<std::size_t>(sizes.back());
    }
    std::vector<crn::ReactionSpec> specs;
    std::set<crn::Complex> used;
    bool clash = false;
    std::size_t offset = 0;
    for (int c = 0; c < classes; ++c) {
      std::size_t d = static_cast<std::size_t>(sizes[static_cast<std::size_t>(c)]);
      crn::Complex base;
      base.coeffs.assign(n, 0);
      for (std::size_t j = 0; j < d; ++j) base.coeffs[offset + j] = small(rng);
      std::vector<crn::Complex> verts;
      if (coin(rng)) verts.push_back(base);
      for (std::size_t j = 0; j < d; ++j) {
        if (!verts.empty() && coin(rng) && verts.size() >= 2) continue;
        auto v = base;
        v.coeffs[offset + j] += step(rng);
        verts.push_back(v);
      }
      if (verts.size() < 2) {
        auto v = base;
        v.coeffs[offset] += 3;
        verts.push_back(v);
      }
      std::shuffle(verts.begin(), verts.end(), rng);
      for (const auto& v : verts)
        if (!used.insert(v).second) clash = true;

      std::set<std::pair<std::size_t, std::size_t>> edges;
      for (std::size_t i = 1; i < verts.size(); ++i) {
        std::uniform_int_distribution<std::size_t> parent(0, i - 1);
        std::size_t p = parent(rng);
        if (coin(rng))
          edges.insert({p, i});
        else
          edges.insert({i, p});
      }
      if (c > 0) {
        std::uniform_int_distribution<std::size_t> pick(0, verts.size() - 1);
        for (int extra = 0; extra < 3; ++extra) {
          std::size_t a = pick(rng), b = pick(rng);
          if (a != b) edges.insert({a, b});
        }
      }
      for (auto [a, b] : edges) specs.push_back({verts[a], verts[b]});
      offset += d;
    }
    if (clash) continue;
    std::shuffle(specs.begin(), specs.end(), rng);
    return crn::ReactionNetwork::from_reactions(species_names(n), specs);
  }
}

/// Union of random directed cycles over random distinct complexes.
inline crn::ReactionNetwork random_cycle_union(std::mt19937& rng, std::size_t max_species = 4) {
  std::uniform_int_distribution<std::size_t> ns(1, max_species), ncycles(1, 3), len(2, 4);
  std::size_t n = ns(rng);
  std::vector<crn::Complex> pool;
  std::set<crn::Complex> seen;
  std::size_t cap = 1;
  for (std::size_t i = 0; i < n; ++i) cap *= 4;
  while (pool.size() < std::min<std::size_t>(8, cap)) {
    auto c = random_complex(rng, n, 3);
    if (seen.insert(c).second) pool.push_back(c);
  }
  std::vector<crn::ReactionSpec> specs;
  std::set<std::pair<crn::Complex, crn::Complex>> edges;
  std::size_t cycles = ncycles(rng);
  for (std::size_t c = 0; c < cycles; ++c) {
    std::vector<crn::Complex> order = pool;
    std::shuffle(order.begin(), order.end(), rng);
    std::size_t l = std::min(len(rng), order.size());
    for (std::size_t i = 0; i < l; ++i) {
      const auto& s = order[i];
      const auto& t = order[(i + 1) % l];
      if (edges.insert({s, t}).second) specs.push_back({s, t});
    }
  }
  return crn::ReactionNetwork::from_reactions(species_names(n), specs);
}

// Minimal exact fraction over long long, enough for tiny test matrices.
struct Frac {
  long long p = 0, q = 1;
  Frac(long long a = 0, long long b = 1) : p(a), q(b) {
    if (q < 0) p = -p, q = -q;
    long long g = std::gcd(p < 0 ? -p : p, q);
    if (g > 1) p /= g, q /= g;
  }
  friend Frac operator-(Frac a, Frac b) { return Frac(a.p * b.q - b.p * a.q, a.q * b.q); }
  friend Frac operator*(Frac a, Frac b) { return Frac(a.p * b.p, a.q * b.q); }
  friend Frac operator/(Frac a, Frac b) { return Frac(a.p * b.q, a.q * b.p); }
  bool zero() const { return p == 0; }
};

/// Rank by textbook Gaussian elimination over Frac.
inline std::size_t oracle_rank(std::vector<std::vector<long long>> rows) {
  if (rows.empty()) return 0;
  std::vector<std::vector<Frac>> a;
  for (const auto& r : rows) {
    std::vector<Frac> fr;
    for (auto v : r) fr.emplace_back(v);
    a.push_back(fr);
  }
  std::size_t rank = 0, cols = a[0].size();
  for (std::size_t c = 0; c < cols && rank < a.size(); ++c) {
    std::size_t piv = rank;
    while (piv < a.size() && a[piv][c].zero()) ++piv;
    if (piv == a.size()) continue;
    std::swap(a[piv], a[rank]);
    for (std::size_t r = 0; r < a.size(); ++r) {
      if (r == rank || a[r][c].zero()) continue;
      Frac f = a[r][c] / a[rank][c];
      for (std::size_t k = c; k < cols; ++k) a[r][k] = a[r][k] - f * a[rank][k];
    }
    ++rank;
  }
  return rank;
}

/// |V| - ℓ - s computed with a breadth-first search and oracle_rank.
inline long oracle_deficiency(const crn::ReactionNetwork& net) {
  std::size_t nv = net.num_vertices();
  std::vector<std::vector<std::size_t>> adj(nv);
  for (const auto& r : net.edges()) {
    adj[r.source].push_back(r.target);
    adj[r.target].push_back(r.source);
  }
  std::vector<bool> seen(nv, false);
  long classes = 0;
  for (std::size_t v = 0; v < nv; ++v) {
    if (seen[v]) continue;
    ++classes;
    std::vector<std::size_t> stack{v};
    seen[v] = true;
    while (!stack.empty()) {
      auto u = stack.back();
      stack.pop_back();
      for (auto w : adj[u])
        if (!seen[w]) seen[w] = true, stack.push_back(w);
    }
  }
  std::vector<std::vector<long long>> rows;
  for (std::size_t e = 0; e < net.num_edges(); ++e) {
    auto v = crn::reaction_vector(net, e);
    rows.emplace_back(v.begin(), v.end());
  }
  return static_cast<long>(nv) - classes - static_cast<long>(oracle_rank(rows));
}

/// Mass-action vector field written out directly, independent of the
/// library's sparse evaluation.
inline std::vector<double> oracle_rhs(const crn::ReactionNetwork& net, const std::vector<double>& k,
                                      const std::vector<double>& x) {
  std::vector<double> f(net.num_species(), 0.0);
  for (std::size_t e = 0; e < net.num_edges(); ++e) {
    const auto& y = net.vertices()[net.edges()[e].source].coeffs;
    const auto& yp = net.vertices()[net.edges()[e].target].coeffs;
    double rate = k[e];
    for (std::size_t i = 0; i < y.size(); ++i) rate *= std::pow(x[i], y[i]);
    for (std::size_t i = 0; i < y.size(); ++i) f[i] += rate * (yp[i] - y[i]);
  }
  return f;
}

}  // namespace fixtures
