#pragma once

// Species-level extinction: the structural strong-extinction set of
// first-order networks, the separator + conservation certificate for weak
// extinction, and numerical evidence read off a trajectory.

#include <cstddef>
#include <optional>
#include <vector>

#include "crn/dynamics.hpp"
#include "crn/exact.hpp"
#include "crn/network.hpp"

namespace crn {

struct StrongExtinctionSet {
  std::vector<std::size_t> species;              // ascending
  std::vector<std::vector<std::size_t>> layers;  // layers[0] feeds a terminal SCC directly
};

/// True iff every source is a single species with coefficient 1 and every
/// target is 0 or a single species with coefficient 1.
bool is_first_order(const ReactionNetwork& net);

/// Species outside every terminal SCC of a first-order, non-weakly-reversible
/// network; each tends to zero for all rates and positive initial states.
/// Layer j+1 holds the species with an edge into layer j. Throws
/// NotFirstOrder or NotApplicable (weakly reversible).
StrongExtinctionSet strong_extinction_species_linear(const ReactionNetwork& net);

enum class CertificateKind { WeakGuaranteed, None };

struct HypothesisFlags {
  long deficiency = 0;
  bool weakly_reversible = false;
  bool consistent = false;
  bool conservative = false;
};

struct ExtinctionCertificate {
  CertificateKind kind = CertificateKind::None;
  std::optional<RatVector> separator;
  std::optional<RatVector> conservation;
  HypothesisFlags hypotheses;
};

/// WeakGuaranteed iff the network is inconsistent (a separator exists) and
/// conservative (a positive conservation vector exists). Then, for every
/// rate assignment and positive initial state, some species has
/// liminf x_i(t) = 0.
ExtinctionCertificate weak_extinction_certificate(const ReactionNetwork& net);

bool verify_extinction_certificate(const ReactionNetwork& net, const ExtinctionCertificate& cert);

struct SpeciesFate {
  double running_min = 0.0;
  double tail_min = 0.0;
  double tail_max = 0.0;
  double final_value = 0.0;
  bool weak_candidate = false;    // running_min < eps_weak
  bool strong_candidate = false;  // tail_max < eps_strong
};

constexpr double kDefaultEpsWeak = 1e-2;
constexpr double kDefaultEpsStrong = 1e-4;

/// Per-species envelope over the trajectory; the tail is the last 20% of
/// samples, at least 50 (or all samples when fewer exist).
std::vector<SpeciesFate> trajectory_extinction_report(const Trajectory& traj, double eps_weak = kDefaultEpsWeak,
                                                      double eps_strong = kDefaultEpsStrong);

}  // namespace crn
