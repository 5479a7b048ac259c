#include "crn/network.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <map>
#include <numeric>
#include <set>

#include "crn/error.hpp"

namespace crn {

bool Complex::is_zero() const {
  return std::all_of(coeffs.begin(), coeffs.end(), [](int c) { return c == 0; });
}

int Complex::molecularity() const { return std::accumulate(coeffs.begin(), coeffs.end(), 0); }

ReactionNetwork::ReactionNetwork(std::vector<Species> species, std::vector<Complex> vertices,
                                 std::vector<Reaction> edges)
    : species_(std::move(species)), vertices_(std::move(vertices)), edges_(std::move(edges)) {}

ReactionNetwork ReactionNetwork::from_reactions(const std::vector<std::string>& species_names,
                                                std::span<const ReactionSpec> reactions) {
  std::vector<Species> species;
  species.reserve(species_names.size());
  for (std::size_t i = 0; i < species_names.size(); ++i) species.push_back({i, species_names[i]});

  std::vector<Complex> vertices;
  std::map<Complex, std::size_t> index;
  auto intern = [&](const Complex& c) {
    auto [it, inserted] = index.try_emplace(c, vertices.size());
    if (inserted) vertices.push_back(c);
    return it->second;
  };

  std::vector<Reaction> edges;
  edges.reserve(reactions.size());
  for (const auto& r : reactions) {
    if (r.source.coeffs.size() != species.size() || r.target.coeffs.size() != species.size())
      throw Error(ErrorKind::DimensionMismatch, "complex length differs from species count");
    std::size_t s = intern(r.source);
    std::size_t t = intern(r.target);
    edges.push_back({s, t});
  }
  return ReactionNetwork(std::move(species), std::move(vertices), std::move(edges));
}

std::optional<std::size_t> ReactionNetwork::find_vertex(const Complex& c) const {
  auto it = std::find(vertices_.begin(), vertices_.end(), c);
  if (it == vertices_.end()) return std::nullopt;
  return static_cast<std::size_t>(it - vertices_.begin());
}

std::optional<std::size_t> ReactionNetwork::find_species(const std::string& name) const {
  for (const auto& s : species_)
    if (s.name == name) return s.id;
  return std::nullopt;
}

std::vector<std::string> ReactionNetwork::species_names() const {
  std::vector<std::string> names;
  names.reserve(species_.size());
  for (const auto& s : species_) names.push_back(s.name);
  return names;
}

std::string_view to_string(ViolationKind kind) {
  switch (kind) {
    case ViolationKind::DuplicateSpeciesName: return "DuplicateSpeciesName";
    case ViolationKind::SpeciesIdMismatch: return "SpeciesIdMismatch";
    case ViolationKind::WrongDimension: return "WrongDimension";
    case ViolationKind::NegativeCoefficient: return "NegativeCoefficient";
    case ViolationKind::DuplicateVertex: return "DuplicateVertex";
    case ViolationKind::EdgeIndexOutOfRange: return "EdgeIndexOutOfRange";
    case ViolationKind::SelfLoop: return "SelfLoop";
    case ViolationKind::DuplicateEdge: return "DuplicateEdge";
    case ViolationKind::IsolatedVertex: return "IsolatedVertex";
  }
  return "Unknown";
}

ValidationReport validate_network(const ReactionNetwork& net) {
  ValidationReport report;
  auto add = [&](ViolationKind kind, std::size_t index, std::string message) {
    report.violations.push_back({kind, index, std::move(message)});
  };

  std::set<std::string> names;
  for (std::size_t i = 0; i < net.num_species(); ++i) {
    const auto& s = net.species()[i];
    if (s.id != i) add(ViolationKind::SpeciesIdMismatch, i, "species id does not match its position");
    if (!names.insert(s.name).second)
      add(ViolationKind::DuplicateSpeciesName, i, "species name '" + s.name + "' repeated");
  }

  std::map<Complex, std::size_t> seen;
  for (std::size_t v = 0; v < net.num_vertices(); ++v) {
    const auto& c = net.vertices()[v];
    if (c.coeffs.size() != net.num_species()) {
      add(ViolationKind::WrongDimension, v, "complex length differs from species count");
      continue;
    }
    if (std::any_of(c.coeffs.begin(), c.coeffs.end(), [](int x) { return x < 0; }))
      add(ViolationKind::NegativeCoefficient, v, "complex has a negative coefficient");
    auto [it, inserted] = seen.try_emplace(c, v);
    if (!inserted)
      add(ViolationKind::DuplicateVertex, v,
          "complex duplicates vertex " + std::to_string(it->second));
  }

  std::vector<bool> incident(net.num_vertices(), false);
  std::set<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t e = 0; e < net.num_edges(); ++e) {
    const auto& r = net.edges()[e];
    if (r.source >= net.num_vertices() || r.target >= net.num_vertices()) {
      add(ViolationKind::EdgeIndexOutOfRange, e, "edge endpoint outside the vertex list");
      continue;
    }
    incident[r.source] = incident[r.target] = true;
    if (r.source == r.target) add(ViolationKind::SelfLoop, e, "edge is a self-loop");
    if (!pairs.insert({r.source, r.target}).second)
      add(ViolationKind::DuplicateEdge, e, "second edge between the same ordered pair");
  }
  for (std::size_t v = 0; v < net.num_vertices(); ++v)
    if (!incident[v]) add(ViolationKind::IsolatedVertex, v, "vertex has no incident edge");
  return report;
}

std::vector<int> reaction_vector(const ReactionNetwork& net, std::size_t edge) {
  if (edge >= net.num_edges())
    throw Error(ErrorKind::IndexOutOfRange, "edge " + std::to_string(edge) + " out of range");
  const auto& r = net.edges()[edge];
  const auto& y = net.vertices().at(r.source).coeffs;
  const auto& yp = net.vertices().at(r.target).coeffs;
  std::vector<int> v(y.size());
  for (std::size_t i = 0; i < y.size(); ++i) v[i] = yp[i] - y[i];
  return v;
}

RateAssignment::RateAssignment(std::vector<double> k) : k_(std::move(k)) {
  for (std::size_t i = 0; i < k_.size(); ++i)
    if (!(k_[i] > 0.0) || !std::isfinite(k_[i]))
      throw Error(ErrorKind::InvalidArgument,
                  "rate constant for edge " + std::to_string(i) + " must be positive and finite");
}

RateAssignment RateAssignment::uniform(std::size_t num_edges, double k) {
  return RateAssignment(std::vector<double>(num_edges, k));
}

MassActionSystem::MassActionSystem(ReactionNetwork network, RateAssignment rates)
    : network_(std::move(network)), rates_(std::move(rates)) {
  if (rates_.size() != network_.num_edges())
    throw Error(ErrorKind::DimensionMismatch, "expected " + std::to_string(network_.num_edges()) +
                                                  " rate constants, got " +
                                                  std::to_string(rates_.size()));
}

std::string format_complex(const ReactionNetwork& net, const Complex& c) {
  std::string out;
  for (std::size_t i = 0; i < c.coeffs.size(); ++i) {
    if (c.coeffs[i] == 0) continue;
    if (!out.empty()) out += " + ";
    if (c.coeffs[i] != 1) out += std::to_string(c.coeffs[i]) + " ";
    out += i < net.num_species() ? net.species()[i].name : "?";
  }
  return out.empty() ? "0" : out;
}

std::string format_number(double value) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, value);
  return std::string(buf, end);
}

}  // namespace crn
