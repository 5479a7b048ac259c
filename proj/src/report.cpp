#include "crn/report.hpp"

#include <algorithm>
#include <limits>
#include <sstream>

#include "crn/error.hpp"

namespace crn {

namespace {

void require(bool ok, const std::string& what) {
  if (!ok) throw Error(ErrorKind::CertificateFailure, what + " failed exact re-verification");
}

std::string_view sign_name(EdgeSign s) { return s == EdgeSign::Negative ? "negative" : "zero"; }

Json index_list(const std::vector<std::size_t>& v) {
  Json out = Json::array();
  for (auto i : v) out.push_back(i);
  return out;
}

Json species_list(const ReactionNetwork& net, const std::vector<std::size_t>& ids) {
  Json out = Json::array();
  for (auto i : ids) out.push_back(net.species()[i].name);
  return out;
}

std::string reaction_text(const ReactionNetwork& net, std::size_t e) {
  const auto& r = net.edges()[e];
  return format_complex(net, net.vertices()[r.source]) + " -> " + format_complex(net, net.vertices()[r.target]);
}

std::string join(const std::vector<std::string>& parts, std::string_view sep) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) out += sep;
    out += parts[i];
  }
  return out;
}

std::string vertex_set_text(const ReactionNetwork& net, const std::vector<std::size_t>& vs) {
  std::vector<std::string> parts;
  for (auto v : vs) parts.push_back(format_complex(net, net.vertices()[v]));
  return "{" + join(parts, ", ") + "}";
}

std::string species_set_text(const ReactionNetwork& net, const std::vector<std::size_t>& ids) {
  std::vector<std::string> parts;
  for (auto i : ids) parts.push_back(net.species()[i].name);
  return "{" + join(parts, ", ") + "}";
}

void verify_conservation(const ReactionNetwork& net, const RatVector& c) {
  bool positive = std::all_of(c.begin(), c.end(), [](const Rational& x) { return x > 0; });
  require(positive && c.size() == net.num_species() && is_zero(stoichiometric_matrix(net).left_multiply(c)),
          "conservation vector");
}

void verify_lyapunov(const ReactionNetwork& net, const LinearLyapunov& lyap) {
  auto vectors = reaction_vectors(net);
  bool ok = lyap.edge_signs.size() == vectors.size();
  bool strict = false;
  for (std::size_t e = 0; ok && e < vectors.size(); ++e) {
    Rational d = dot(lyap.w, vectors[e]);
    EdgeSign expected = d < 0 ? EdgeSign::Negative : EdgeSign::Zero;
    ok = d <= 0 && lyap.edge_signs[e] == expected;
    strict = strict || d < 0;
  }
  require(ok && strict, "Lyapunov vector");
}

void verify_trace(const ReactionNetwork& net, const LinearLyapunov& lyap, const ConstructionTrace& trace) {
  auto vectors = reaction_vectors(net);
  bool ok = true;
  for (auto e : trace.part_one_edges) ok = ok && dot(lyap.w, vectors[e]) == 0;
  for (auto e : trace.part_two_edges) ok = ok && dot(lyap.w, vectors[e]) == 0;
  std::optional<Rational> crossing;
  for (auto e : trace.crossing_edges) {
    Rational d = dot(lyap.w, vectors[e]);
    ok = ok && d < 0 && (!crossing || *crossing == d);
    crossing = d;
  }
  ok = ok && crossing.has_value() && trace.dim_total == trace.dim_part_one + trace.dim_part_two + 1;
  require(ok, "deficiency-zero construction");
}

std::string_view method_name(LyapunovMethod m) {
  switch (m) {
    case LyapunovMethod::DeficiencyZero: return "deficiency_zero";
    case LyapunovMethod::Separator: return "separator";
    case LyapunovMethod::NoneConsistent: return "none";
  }
  return "none";
}

}  // namespace

Json rational_to_json(const Rational& r) {
  if (denominator(r) != 1) return to_string(r);
  Integer n = numerator(r);
  if (n >= std::numeric_limits<long long>::min() && n <= std::numeric_limits<long long>::max())
    return n.convert_to<long long>();
  return n.str();
}

Json vector_to_json(const RatVector& v) {
  Json out = Json::array();
  for (const auto& x : v) out.push_back(rational_to_json(x));
  return out;
}

StrongSetOutcome strong_set_outcome(const ReactionNetwork& net) {
  StrongSetOutcome out;
  try {
    out.set = strong_extinction_species_linear(net);
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::NotFirstOrder && e.kind() != ErrorKind::NotApplicable) throw;
    out.unavailable = to_string(e.kind());
  }
  return out;
}

AnalysisReport analyze(const ReactionNetwork& net) {
  AnalysisReport r{.network = net,
                   .linkage = linkage_classes(net),
                   .sccs = strongly_connected_components(net),
                   .deficiency = deficiency(net),
                   .diagnostics = deficiency_zero_diagnostics(net),
                   .consistency = is_consistent(net),
                   .conservation = is_conservative(net),
                   .lyapunov_method = LyapunovMethod::NoneConsistent,
                   .lyapunov = std::nullopt,
                   .trace = std::nullopt,
                   .extinction = weak_extinction_certificate(net),
                   .strong = strong_set_outcome(net)};

  require(verify_consistency(net, r.consistency), "consistency certificate");
  if (r.conservation) verify_conservation(net, *r.conservation);
  require(verify_extinction_certificate(net, r.extinction), "extinction certificate");

  bool weakly_reversible =
      std::all_of(r.sccs.terminal.begin(), r.sccs.terminal.end(), [](bool t) { return t; });
  if (r.deficiency.deficiency == 0 && !weakly_reversible) {
    auto dz = construct_w_deficiency_zero(net);
    r.lyapunov_method = LyapunovMethod::DeficiencyZero;
    r.lyapunov = dz.lyapunov;
    r.trace = dz.trace;
    verify_trace(net, *r.lyapunov, *r.trace);
  } else if (auto* inc = std::get_if<Inconsistent>(&r.consistency)) {
    r.lyapunov_method = LyapunovMethod::Separator;
    r.lyapunov = lyapunov_from_separator(net, inc->w);
  }
  if (r.lyapunov) verify_lyapunov(net, *r.lyapunov);
  return r;
}

Json extinction_to_json(const ReactionNetwork& net, const ExtinctionCertificate& cert,
                        const StrongSetOutcome& strong) {
  Json ext;
  ext["certificate"] = cert.kind == CertificateKind::WeakGuaranteed ? "WeakGuaranteed" : "None";
  ext["separator"] = cert.separator ? vector_to_json(*cert.separator) : Json();
  ext["conservation"] = cert.conservation ? vector_to_json(*cert.conservation) : Json();
  ext["hypotheses"] = {{"deficiency", cert.hypotheses.deficiency},
                       {"weakly_reversible", cert.hypotheses.weakly_reversible},
                       {"consistent", cert.hypotheses.consistent},
                       {"conservative", cert.hypotheses.conservative}};
  Json s;
  if (strong.set) {
    s["species"] = species_list(net, strong.set->species);
    Json layers = Json::array();
    for (const auto& layer : strong.set->layers) layers.push_back(species_list(net, layer));
    s["layers"] = layers;
  } else {
    s["unavailable"] = strong.unavailable;
  }
  ext["strong_set"] = s;
  ext["warnings"] = Json::array();
  if (!cert.hypotheses.conservative)
    ext["warnings"].push_back("no positive conservation law; trajectories may be unbounded");
  return ext;
}

Json fates_to_json(const ReactionNetwork& net, const std::vector<SpeciesFate>& fates, double eps_weak,
                   double eps_strong) {
  Json out;
  out["eps_weak"] = eps_weak;
  out["eps_strong"] = eps_strong;
  Json species = Json::array();
  for (std::size_t i = 0; i < fates.size(); ++i) {
    const auto& f = fates[i];
    species.push_back({{"species", net.species()[i].name},
                       {"running_min", f.running_min},
                       {"tail_min", f.tail_min},
                       {"tail_max", f.tail_max},
                       {"final", f.final_value},
                       {"weak_candidate", f.weak_candidate},
                       {"strong_candidate", f.strong_candidate}});
  }
  out["species"] = species;
  return out;
}

Json to_json(const AnalysisReport& r) {
  const auto& net = r.network;
  Json doc;

  Json network;
  network["species"] = net.species_names();
  Json complexes = Json::array();
  for (const auto& c : net.vertices()) complexes.push_back(format_complex(net, c));
  network["complexes"] = complexes;
  Json reactions = Json::array();
  for (std::size_t e = 0; e < net.num_edges(); ++e)
    reactions.push_back({{"source", net.edges()[e].source},
                         {"target", net.edges()[e].target},
                         {"text", reaction_text(net, e)},
                         {"vector", reaction_vector(net, e)}});
  network["reactions"] = reactions;
  doc["network"] = network;

  Json graph;
  Json classes = Json::array();
  for (const auto& c : r.linkage.classes) classes.push_back(index_list(c));
  graph["linkage_classes"] = classes;
  Json sccs = Json::array();
  for (std::size_t i = 0; i < r.sccs.partition.size(); ++i)
    sccs.push_back({{"vertices", index_list(r.sccs.partition.classes[i])}, {"terminal", bool(r.sccs.terminal[i])}});
  graph["sccs"] = sccs;
  graph["weakly_reversible"] = r.extinction.hypotheses.weakly_reversible;
  doc["graph"] = graph;

  Json def;
  def["vertices"] = r.deficiency.num_vertices;
  def["linkage_classes"] = r.deficiency.num_linkage_classes;
  def["stoichiometric_dimension"] = r.deficiency.stoich_dim;
  def["deficiency"] = r.deficiency.deficiency;
  Json diag = Json::array();
  for (const auto& c : r.diagnostics.classes)
    diag.push_back({{"vertices", index_list(c.vertices)},
                    {"affine_rank", c.affine_rank},
                    {"affinely_independent", c.affinely_independent},
                    {"subspace_dim", c.subspace_dim}});
  def["class_diagnostics"] = diag;
  def["subspaces_independent"] = r.diagnostics.subspaces_independent;
  doc["deficiency"] = def;

  Json cons;
  if (const auto* c = std::get_if<Consistent>(&r.consistency)) {
    cons["verdict"] = "consistent";
    cons["lambda"] = vector_to_json(c->lambda);
  } else {
    cons["verdict"] = "inconsistent";
    cons["separator"] = vector_to_json(std::get<Inconsistent>(r.consistency).w);
  }
  doc["consistency"] = cons;

  doc["conservative"] = {{"conservative", r.conservation.has_value()},
                         {"vector", r.conservation ? vector_to_json(*r.conservation) : Json()}};

  Json lyap;
  lyap["method"] = method_name(r.lyapunov_method);
  if (r.lyapunov) {
    lyap["w"] = vector_to_json(r.lyapunov->w);
    Json signs = Json::array();
    for (auto s : r.lyapunov->edge_signs) signs.push_back(sign_name(s));
    lyap["edge_signs"] = signs;
  } else {
    lyap["w"] = Json();
    lyap["edge_signs"] = Json();
  }
  if (r.trace) {
    const auto& t = *r.trace;
    lyap["trace"] = {{"linkage_class", t.linkage_class},
                     {"terminal_scc", t.terminal_scc},
                     {"terminal_vertices", index_list(t.terminal_vertices)},
                     {"part_one", index_list(t.part_one)},
                     {"part_two", index_list(t.part_two)},
                     {"part_one_edges", index_list(t.part_one_edges)},
                     {"part_two_edges", index_list(t.part_two_edges)},
                     {"crossing_edges", index_list(t.crossing_edges)},
                     {"chosen_crossing_edge", t.chosen_crossing_edge},
                     {"dim_total", t.dim_total},
                     {"dim_part_one", t.dim_part_one},
                     {"dim_part_two", t.dim_part_two}};
  } else {
    lyap["trace"] = Json();
  }
  doc["lyapunov"] = lyap;

  doc["extinction"] = extinction_to_json(net, r.extinction, r.strong);
  return doc;
}

std::string lyapunov_text(const AnalysisReport& r) {
  const auto& net = r.network;
  std::ostringstream out;
  if (!r.lyapunov) {
    out << "consistent: no linear Lyapunov function exists for all rate constants\n";
    return out.str();
  }
  out << "method: " << (r.lyapunov_method == LyapunovMethod::DeficiencyZero ? "deficiency-zero construction"
                                                                             : "separating vector")
      << "\n";
  out << "w = " << to_string(r.lyapunov->w) << "\n";
  auto vectors = reaction_vectors(net);
  for (std::size_t e = 0; e < net.num_edges(); ++e)
    out << "  e" << e << "  " << reaction_text(net, e) << "  w.(y'-y) = " << to_string(dot(r.lyapunov->w, vectors[e]))
        << " (" << sign_name(r.lyapunov->edge_signs[e]) << ")\n";
  if (r.trace) {
    const auto& t = *r.trace;
    out << "trace:\n";
    out << "  linkage class " << t.linkage_class << ", terminal component " << t.terminal_scc << " = "
        << vertex_set_text(net, t.terminal_vertices) << "\n";
    out << "  part one " << vertex_set_text(net, t.part_one) << "\n";
    out << "  part two " << vertex_set_text(net, t.part_two) << "\n";
    std::vector<std::string> crossing;
    for (auto e : t.crossing_edges) crossing.push_back("e" + std::to_string(e));
    out << "  crossing edges " << join(crossing, ", ") << " (oriented by e" << t.chosen_crossing_edge << ")\n";
    out << "  dim S = " << t.dim_total << " = " << t.dim_part_one << " + " << t.dim_part_two << " + 1\n";
  }
  return out.str();
}

std::string extinction_text(const AnalysisReport& r) {
  const auto& net = r.network;
  const auto& cert = r.extinction;
  std::ostringstream out;
  out << "weak extinction certificate: "
      << (cert.kind == CertificateKind::WeakGuaranteed ? "WeakGuaranteed" : "None") << "\n";
  if (cert.separator) out << "  separator w = " << to_string(*cert.separator) << "\n";
  if (cert.conservation) out << "  conservation c = " << to_string(*cert.conservation) << "\n";
  out << "  deficiency " << cert.hypotheses.deficiency << ", weakly reversible "
      << (cert.hypotheses.weakly_reversible ? "yes" : "no") << ", consistent "
      << (cert.hypotheses.consistent ? "yes" : "no") << ", conservative "
      << (cert.hypotheses.conservative ? "yes" : "no") << "\n";
  if (!cert.hypotheses.conservative) out << "  warning: no positive conservation law; trajectories may be unbounded\n";
  if (r.strong.set) {
    out << "strong extinction set: " << species_set_text(net, r.strong.set->species) << "\n";
    for (std::size_t j = 0; j < r.strong.set->layers.size(); ++j)
      out << "  N" << j + 1 << " = " << species_set_text(net, r.strong.set->layers[j]) << "\n";
  } else {
    out << "strong extinction set: " << r.strong.unavailable << "\n";
  }
  return out.str();
}

std::string fates_text(const ReactionNetwork& net, const std::vector<SpeciesFate>& fates, double eps_weak,
                       double eps_strong) {
  std::ostringstream out;
  out << "trajectory evidence (eps_weak " << format_number(eps_weak) << ", eps_strong " << format_number(eps_strong)
      << "):\n";
  for (std::size_t i = 0; i < fates.size(); ++i) {
    const auto& f = fates[i];
    out << "  " << net.species()[i].name << ": min " << f.running_min << ", tail [" << f.tail_min << ", "
        << f.tail_max << "], final " << f.final_value;
    if (f.strong_candidate)
      out << "  strong candidate";
    else if (f.weak_candidate)
      out << "  weak candidate";
    out << "\n";
  }
  return out.str();
}

std::string to_text(const AnalysisReport& r) {
  const auto& net = r.network;
  std::ostringstream out;
  out << "species: " << join(net.species_names(), ", ") << "\n";
  out << "reactions:\n";
  for (std::size_t e = 0; e < net.num_edges(); ++e) out << "  e" << e << "  " << reaction_text(net, e) << "\n";

  out << "linkage classes: " << r.linkage.size() << "\n";
  for (const auto& c : r.linkage.classes) out << "  " << vertex_set_text(net, c) << "\n";
  out << "strongly connected components: " << r.sccs.partition.size() << "\n";
  for (std::size_t i = 0; i < r.sccs.partition.size(); ++i)
    out << "  " << vertex_set_text(net, r.sccs.partition.classes[i]) << (r.sccs.terminal[i] ? " terminal" : "")
        << "\n";
  out << "weakly reversible: " << (r.extinction.hypotheses.weakly_reversible ? "yes" : "no") << "\n";

  out << "deficiency: " << r.deficiency.deficiency << " = " << r.deficiency.num_vertices << " vertices - "
      << r.deficiency.num_linkage_classes << " linkage classes - " << r.deficiency.stoich_dim << " (dim S)\n";
  out << "  affinely independent classes: " << (r.diagnostics.all_affinely_independent() ? "yes" : "no")
      << ", independent class subspaces: " << (r.diagnostics.subspaces_independent ? "yes" : "no") << "\n";

  if (const auto* c = std::get_if<Consistent>(&r.consistency))
    out << "consistency: Consistent, lambda = " << to_string(c->lambda) << "\n";
  else
    out << "consistency: Inconsistent, separator w = " << to_string(std::get<Inconsistent>(r.consistency).w)
        << "\n";
  out << "conservative: " << (r.conservation ? "yes, c = " + to_string(*r.conservation) : std::string("no")) << "\n";

  out << "lyapunov:\n" << lyapunov_text(r);
  out << "extinction:\n" << extinction_text(r);
  return out.str();
}

}  // namespace crn
