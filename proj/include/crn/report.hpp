#pragma once

// Full structural analysis of a network, rendered as canonical JSON or as a
// plain-text summary.

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "crn/extinction.hpp"
#include "crn/graph.hpp"
#include "crn/lyapunov.hpp"
#include "crn/network.hpp"
#include "crn/structure.hpp"

namespace crn {

using Json = nlohmann::ordered_json;

enum class LyapunovMethod { DeficiencyZero, Separator, NoneConsistent };

struct StrongSetOutcome {
  std::optional<StrongExtinctionSet> set;
  std::string unavailable;  // reason when set is empty
};

struct AnalysisReport {
  ReactionNetwork network;
  Partition linkage;
  SccDecomposition sccs;
  DeficiencyReport deficiency;
  DeficiencyZeroDiagnostics diagnostics;
  ConsistencyVerdict consistency;
  std::optional<RatVector> conservation;
  LyapunovMethod lyapunov_method = LyapunovMethod::NoneConsistent;
  std::optional<LinearLyapunov> lyapunov;
  std::optional<ConstructionTrace> trace;
  ExtinctionCertificate extinction;
  StrongSetOutcome strong;
};

/// Runs every structural analysis. Each certificate is re-checked in exact
/// arithmetic; a failed check throws CertificateFailure.
AnalysisReport analyze(const ReactionNetwork& net);

StrongSetOutcome strong_set_outcome(const ReactionNetwork& net);

/// Integers are emitted as JSON numbers when they fit in 64 bits, otherwise
/// as decimal strings; non-integers as "p/q" strings.
Json rational_to_json(const Rational& r);
Json vector_to_json(const RatVector& v);

Json to_json(const AnalysisReport& report);
std::string to_text(const AnalysisReport& report);

Json extinction_to_json(const ReactionNetwork& net, const ExtinctionCertificate& cert,
                        const StrongSetOutcome& strong);
Json fates_to_json(const ReactionNetwork& net, const std::vector<SpeciesFate>& fates, double eps_weak,
                   double eps_strong);

std::string lyapunov_text(const AnalysisReport& report);
std::string extinction_text(const AnalysisReport& report);
std::string fates_text(const ReactionNetwork& net, const std::vector<SpeciesFate>& fates, double eps_weak,
                       double eps_strong);

}  // namespace crn
