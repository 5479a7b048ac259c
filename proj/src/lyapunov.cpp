#include "crn/lyapunov.hpp"

#include <algorithm>
#include <cmath>

#include "crn/error.hpp"
#include "crn/graph.hpp"
#include "crn/structure.hpp"

namespace crn {

LinearLyapunov lyapunov_from_separator(const ReactionNetwork& net, const RatVector& w) {
  if (w.size() != net.num_species()) throw Error(ErrorKind::DimensionMismatch, "w length mismatch");
  LinearLyapunov out{w, {}};
  bool strict = false;
  for (std::size_t e = 0; e < net.num_edges(); ++e) {
    Rational d = dot(w, to_rational(reaction_vector(net, e)));
    if (d > 0)
      throw Error(ErrorKind::NotASeparator,
                  "w·(y'-y) = " + to_string(d) + " > 0 on edge " + std::to_string(e));
    strict |= d < 0;
    out.edge_signs.push_back(d < 0 ? EdgeSign::Negative : EdgeSign::Zero);
  }
  if (!strict) throw Error(ErrorKind::NotASeparator, "w·(y'-y) = 0 on every edge");
  return out;
}

DeficiencyZeroLyapunov construct_w_deficiency_zero(const ReactionNetwork& net) {
  const auto linkage = linkage_classes(net);
  const auto scc = strongly_connected_components(net);
  const auto& scc_of = scc.partition.class_of;

  // The first linkage class (by smallest vertex) holding more than one SCC.
  std::size_t chosen_class = linkage.size();
  for (std::size_t c = 0; c < linkage.size() && chosen_class == linkage.size(); ++c) {
    const auto& vs = linkage.classes[c];
    for (std::size_t v : vs)
      if (scc_of[v] != scc_of[vs.front()]) {
        chosen_class = c;
        break;
      }
  }
  if (chosen_class == linkage.size())
    throw Error(ErrorKind::NotApplicable, "network is weakly reversible");

  auto def = deficiency(net);
  if (def.deficiency != 0)
    throw Error(ErrorKind::NotDeficiencyZero, "deficiency is " + std::to_string(def.deficiency));

  ConstructionTrace trace;
  trace.linkage_class = chosen_class;
  const auto& members = linkage.classes[chosen_class];

  // Terminal SCC of the class with the smallest vertex; SCC ids are already
  // ordered by smallest vertex, so the first hit in vertex order wins.
  trace.terminal_scc = scc.partition.size();
  for (std::size_t v : members)
    if (scc.terminal[scc_of[v]]) {
      trace.terminal_scc = scc_of[v];
      break;
    }
  trace.terminal_vertices = scc.partition.classes[trace.terminal_scc];

  // Connected components of the class with the terminal SCC removed.
  std::vector<bool> in_terminal(net.num_vertices(), false);
  for (std::size_t v : trace.terminal_vertices) in_terminal[v] = true;
  std::vector<Reaction> outside;
  for (const auto& r : net.edges())
    if (!in_terminal[r.source] && !in_terminal[r.target]) outside.push_back(r);
  auto pieces = weak_components(net.num_vertices(), outside);
  std::size_t first_outside = *std::find_if(members.begin(), members.end(),
                                            [&](std::size_t v) { return !in_terminal[v]; });
  std::vector<bool> in_one(net.num_vertices(), false);
  for (std::size_t v : pieces.classes[pieces.class_of[first_outside]]) in_one[v] = true;

  for (std::size_t v = 0; v < net.num_vertices(); ++v) (in_one[v] ? trace.part_one : trace.part_two).push_back(v);
  for (std::size_t e = 0; e < net.num_edges(); ++e) {
    const auto& r = net.edges()[e];
    if (in_one[r.source] && in_one[r.target]) {
      trace.part_one_edges.push_back(e);
    } else if (!in_one[r.source] && !in_one[r.target]) {
      trace.part_two_edges.push_back(e);
    } else {
      trace.crossing_edges.push_back(e);
    }
  }
  trace.chosen_crossing_edge = trace.crossing_edges.front();

  const std::size_t n = net.num_species();
  auto all = reaction_vectors(net);
  auto one = reaction_vectors(net, trace.part_one_edges);
  auto two = reaction_vectors(net, trace.part_two_edges);
  trace.dim_total = span_rank(all, n);
  trace.dim_part_one = span_rank(one, n);
  trace.dim_part_two = span_rank(two, n);

  std::vector<RatVector> perp = one;
  perp.insert(perp.end(), two.begin(), two.end());
  RatVector w = vector_in_span_orthogonal_to(all, perp, all[trace.chosen_crossing_edge]);

  // Exact post-conditions: zero inside each part, one common negative value
  // on every crossing edge.
  for (std::size_t e : trace.part_one_edges)
    if (!dot(w, all[e]).is_zero()) throw Error(ErrorKind::CertificateFailure, "nonzero dot inside part one");
  for (std::size_t e : trace.part_two_edges)
    if (!dot(w, all[e]).is_zero()) throw Error(ErrorKind::CertificateFailure, "nonzero dot inside part two");
  Rational crossing = dot(w, all[trace.chosen_crossing_edge]);
  for (std::size_t e : trace.crossing_edges)
    if (dot(w, all[e]) != crossing || crossing >= 0)
      throw Error(ErrorKind::CertificateFailure, "crossing edges disagree");

  return {lyapunov_from_separator(net, w), std::move(trace)};
}

namespace {

double monomial(const std::vector<int>& y, std::span<const double> x) {
  double v = 1.0;
  for (std::size_t i = 0; i < y.size(); ++i)
    if (y[i] != 0) v *= std::pow(x[i], y[i]);
  return v;
}

void require_positive(std::span<const double> x) {
  for (double xi : x)
    if (!(xi > 0.0)) throw Error(ErrorKind::NonpositiveState, "state must be strictly positive");
}

}  // namespace

double vdot(const MassActionSystem& sys, std::span<const double> w, std::span<const double> x) {
  const auto& net = sys.network();
  if (w.size() != net.num_species() || x.size() != net.num_species())
    throw Error(ErrorKind::DimensionMismatch, "vdot: length mismatch");
  require_positive(x);
  double total = 0.0;
  for (std::size_t e = 0; e < net.num_edges(); ++e) {
    auto v = reaction_vector(net, e);
    double wv = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) wv += w[i] * v[i];
    if (wv == 0.0) continue;
    total += sys.rates()[e] * monomial(net.vertices()[net.edges()[e].source].coeffs, x) * wv;
  }
  return total;
}

double vdot(const MassActionSystem& sys, const RatVector& w, std::span<const double> x) {
  auto wd = to_double(w);
  return vdot(sys, std::span<const double>(wd), x);
}

double hj_value(std::span<const double> x, std::span<const double> xstar) {
  if (x.size() != xstar.size()) throw Error(ErrorKind::DimensionMismatch, "hj_value: length mismatch");
  require_positive(x);
  require_positive(xstar);
  double s = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) s += x[i] * std::log(x[i]) - x[i] - x[i] * std::log(xstar[i]);
  return s;
}

std::vector<double> hj_gradient(std::span<const double> x, std::span<const double> xstar) {
  if (x.size() != xstar.size()) throw Error(ErrorKind::DimensionMismatch, "hj_gradient: length mismatch");
  require_positive(x);
  require_positive(xstar);
  std::vector<double> g(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) g[i] = std::log(x[i]) - std::log(xstar[i]);
  return g;
}

}  // namespace crn
