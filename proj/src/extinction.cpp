#include "crn/extinction.hpp"

#include <algorithm>
#include <limits>

#include "crn/error.hpp"
#include "crn/graph.hpp"
#include "crn/structure.hpp"

namespace crn {

namespace {

// Index of the single species in a complex with coefficient vector e_i.
std::optional<std::size_t> unit_species(const Complex& c) {
  std::optional<std::size_t> found;
  for (std::size_t i = 0; i < c.coeffs.size(); ++i) {
    if (c.coeffs[i] == 0) continue;
    if (c.coeffs[i] != 1 || found) return std::nullopt;
    found = i;
  }
  return found;
}

}  // namespace

bool is_first_order(const ReactionNetwork& net) {
  for (const auto& r : net.edges()) {
    if (!unit_species(net.vertices()[r.source])) return false;
    const auto& target = net.vertices()[r.target];
    if (!target.is_zero() && !unit_species(target)) return false;
  }
  return true;
}

StrongExtinctionSet strong_extinction_species_linear(const ReactionNetwork& net) {
  if (!is_first_order(net))
    throw Error(ErrorKind::NotFirstOrder, "a source is not a single species or a target is not 0 or a single species");
  auto scc = strongly_connected_components(net);
  if (std::all_of(scc.terminal.begin(), scc.terminal.end(), [](bool t) { return t; }))
    throw Error(ErrorKind::NotApplicable, "network is weakly reversible");

  constexpr std::size_t kUnreached = std::numeric_limits<std::size_t>::max();
  const std::size_t nv = net.num_vertices();
  std::vector<std::size_t> depth(nv, kUnreached);
  std::vector<std::size_t> frontier;
  for (std::size_t v = 0; v < nv; ++v)
    if (scc.terminal[scc.partition.class_of[v]]) {
      depth[v] = 0;
      frontier.push_back(v);
    }

  // Reverse breadth-first layering: a vertex at depth j+1 has an edge into
  // depth j. Every non-terminal vertex reaches a terminal SCC.
  StrongExtinctionSet out;
  while (!frontier.empty()) {
    std::vector<std::size_t> next;
    for (const auto& r : net.edges())
      if (depth[r.source] == kUnreached && depth[r.target] != kUnreached &&
          std::find(frontier.begin(), frontier.end(), r.target) != frontier.end()) {
        depth[r.source] = depth[r.target] + 1;
        next.push_back(r.source);
      }
    std::sort(next.begin(), next.end());
    next.erase(std::unique(next.begin(), next.end()), next.end());
    if (!next.empty()) {
      std::vector<std::size_t> layer;
      for (std::size_t v : next) layer.push_back(*unit_species(net.vertices()[v]));
      std::sort(layer.begin(), layer.end());
      out.layers.push_back(layer);
      out.species.insert(out.species.end(), layer.begin(), layer.end());
    }
    frontier = std::move(next);
  }
  std::sort(out.species.begin(), out.species.end());
  return out;
}

ExtinctionCertificate weak_extinction_certificate(const ReactionNetwork& net) {
  ExtinctionCertificate cert;
  cert.hypotheses.deficiency = deficiency(net).deficiency;
  cert.hypotheses.weakly_reversible = is_weakly_reversible(net);
  auto verdict = is_consistent(net);
  cert.hypotheses.consistent = std::holds_alternative<Consistent>(verdict);
  if (auto* inc = std::get_if<Inconsistent>(&verdict)) cert.separator = inc->w;
  cert.conservation = is_conservative(net);
  cert.hypotheses.conservative = cert.conservation.has_value();
  if (cert.separator && cert.conservation) cert.kind = CertificateKind::WeakGuaranteed;
  return cert;
}

bool verify_extinction_certificate(const ReactionNetwork& net, const ExtinctionCertificate& cert) {
  auto m = stoichiometric_matrix(net);
  if (cert.separator && !verify_separator(m, *cert.separator)) return false;
  if (cert.conservation) {
    const auto& c = *cert.conservation;
    if (!std::all_of(c.begin(), c.end(), [](const Rational& x) { return x > 0; })) return false;
    if (!is_zero(m.left_multiply(c))) return false;
  }
  if (cert.kind == CertificateKind::WeakGuaranteed) return cert.separator && cert.conservation;
  return true;
}

std::vector<SpeciesFate> trajectory_extinction_report(const Trajectory& traj, double eps_weak, double eps_strong) {
  if (traj.states.empty()) throw Error(ErrorKind::InvalidArgument, "empty trajectory");
  if (!(eps_strong > 0.0) || !(eps_strong <= eps_weak))
    throw Error(ErrorKind::InvalidArgument, "need 0 < eps_strong <= eps_weak");

  const std::size_t samples = traj.states.size();
  const std::size_t n = traj.states.front().size();
  std::size_t tail = std::max<std::size_t>(samples / 5, 50);
  tail = std::min(tail, samples);
  const std::size_t tail_start = samples - tail;

  std::vector<SpeciesFate> fates(n);
  for (std::size_t i = 0; i < n; ++i) {
    auto& f = fates[i];
    f.running_min = f.tail_min = std::numeric_limits<double>::infinity();
    f.tail_max = -std::numeric_limits<double>::infinity();
    for (std::size_t s = 0; s < samples; ++s) {
      double v = traj.states[s][i];
      f.running_min = std::min(f.running_min, v);
      if (s >= tail_start) {
        f.tail_min = std::min(f.tail_min, v);
        f.tail_max = std::max(f.tail_max, v);
      }
    }
    f.final_value = traj.states.back()[i];
    f.weak_candidate = f.running_min < eps_weak;
    f.strong_candidate = f.tail_max < eps_strong;
  }
  return fates;
}

}  // namespace crn
