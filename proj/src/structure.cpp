#include "crn/structure.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "crn/error.hpp"
#include "crn/graph.hpp"

namespace crn {

RatMatrix stoichiometric_matrix(const ReactionNetwork& net) {
  RatMatrix m(net.num_species(), net.num_edges());
  for (std::size_t e = 0; e < net.num_edges(); ++e) {
    auto v = reaction_vector(net, e);
    for (std::size_t i = 0; i < v.size(); ++i) m(i, e) = v[i];
  }
  return m;
}

std::vector<RatVector> reaction_vectors(const ReactionNetwork& net, std::span<const std::size_t> edges) {
  std::vector<RatVector> out;
  out.reserve(edges.size());
  for (std::size_t e : edges) out.push_back(to_rational(reaction_vector(net, e)));
  return out;
}

std::vector<RatVector> reaction_vectors(const ReactionNetwork& net) {
  std::vector<std::size_t> all(net.num_edges());
  std::iota(all.begin(), all.end(), 0);
  return reaction_vectors(net, all);
}

DeficiencyReport deficiency(const ReactionNetwork& net) {
  DeficiencyReport r;
  r.num_vertices = net.num_vertices();
  r.num_linkage_classes = linkage_classes(net).size();
  r.stoich_dim = rank(stoichiometric_matrix(net));
  r.deficiency = static_cast<long>(r.num_vertices) - static_cast<long>(r.num_linkage_classes) -
                 static_cast<long>(r.stoich_dim);
  return r;
}

bool DeficiencyZeroDiagnostics::all_affinely_independent() const {
  return std::all_of(classes.begin(), classes.end(),
                     [](const LinkageClassDiagnostic& c) { return c.affinely_independent; });
}

DeficiencyZeroDiagnostics deficiency_zero_diagnostics(const ReactionNetwork& net) {
  const std::size_t n = net.num_species();
  auto linkage = linkage_classes(net);
  std::vector<std::vector<std::size_t>> class_edges(linkage.size());
  for (std::size_t e = 0; e < net.num_edges(); ++e)
    class_edges[linkage.class_of[net.edges()[e].source]].push_back(e);

  DeficiencyZeroDiagnostics out;
  std::size_t rank_sum = 0;
  for (std::size_t c = 0; c < linkage.size(); ++c) {
    LinkageClassDiagnostic d;
    d.vertices = linkage.classes[c];
    const auto& base = net.vertices()[d.vertices.front()].coeffs;
    std::vector<RatVector> diffs;
    for (std::size_t i = 1; i < d.vertices.size(); ++i) {
      const auto& y = net.vertices()[d.vertices[i]].coeffs;
      RatVector v(n);
      for (std::size_t s = 0; s < n; ++s) v[s] = y[s] - base[s];
      diffs.push_back(std::move(v));
    }
    d.affine_rank = span_rank(diffs, n);
    d.affinely_independent = d.affine_rank == d.vertices.size() - 1;
    auto vectors = reaction_vectors(net, class_edges[c]);
    d.subspace_dim = span_rank(vectors, n);
    rank_sum += d.subspace_dim;
    out.classes.push_back(std::move(d));
  }
  out.subspaces_independent = rank_sum == rank(stoichiometric_matrix(net));
  return out;
}

ConsistencyVerdict is_consistent(const ReactionNetwork& net) {
  if (net.num_edges() == 0) return Consistent{};
  auto result = positive_nullvector_or_certificate(stoichiometric_matrix(net));
  if (auto* p = std::get_if<PositiveDependence>(&result)) return Consistent{std::move(p->lambda)};
  return Inconsistent{std::move(std::get<Separator>(result).w)};
}

bool verify_consistency(const ReactionNetwork& net, const ConsistencyVerdict& verdict) {
  auto m = stoichiometric_matrix(net);
  if (const auto* c = std::get_if<Consistent>(&verdict)) return verify_positive_dependence(m, c->lambda);
  return verify_separator(m, std::get<Inconsistent>(verdict).w);
}

std::optional<RatVector> is_conservative(const ReactionNetwork& net) {
  if (net.num_species() == 0) return std::nullopt;
  auto result = positive_nullvector_or_certificate(stoichiometric_matrix(net).transpose());
  if (auto* p = std::get_if<PositiveDependence>(&result)) return std::move(p->lambda);
  return std::nullopt;
}

std::vector<RatVector> conservation_laws(const ReactionNetwork& net) {
  return nullspace(stoichiometric_matrix(net).transpose());
}

ComplexBalanceCheck is_complex_balanced_state(const MassActionSystem& sys, std::span<const double> x) {
  const auto& net = sys.network();
  if (x.size() != net.num_species()) throw Error(ErrorKind::DimensionMismatch, "state length mismatch");
  for (double xi : x)
    if (!(xi > 0.0)) throw Error(ErrorKind::NonpositiveState, "complex balance needs a positive state");

  std::vector<double> out(net.num_vertices(), 0.0), in(net.num_vertices(), 0.0);
  for (std::size_t e = 0; e < net.num_edges(); ++e) {
    const auto& r = net.edges()[e];
    const auto& y = net.vertices()[r.source].coeffs;
    double flux = sys.rates()[e];
    for (std::size_t i = 0; i < y.size(); ++i)
      if (y[i] != 0) flux *= std::pow(x[i], y[i]);
    out[r.source] += flux;
    in[r.target] += flux;
  }

  ComplexBalanceCheck check;
  check.balanced = true;
  check.residuals.resize(net.num_vertices());
  for (std::size_t v = 0; v < net.num_vertices(); ++v) {
    check.residuals[v] = out[v] - in[v];
    double tol = std::max(1e-12 * std::max(out[v], in[v]), 1e-14);
    if (std::abs(check.residuals[v]) > tol) check.balanced = false;
  }
  return check;
}

}  // namespace crn
