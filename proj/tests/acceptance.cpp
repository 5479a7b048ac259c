// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any
// criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>

#include "crn/dynamics.hpp"
#include "crn/exact.hpp"
#include "crn/extinction.hpp"
#include "crn/graph.hpp"
#include "crn/lyapunov.hpp"
#include "crn/parser.hpp"
#include "crn/structure.hpp"
#include "fixtures.hpp"

using namespace crn;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

struct Outcome {
  bool pass = true;
  std::string detail;

  void fail(const std::string& why) {
    if (pass) detail = why;
    pass = false;
  }
};

MassActionSystem with_file_rates(const std::string& name) {
  auto p = fixtures::load(name);
  return MassActionSystem(p.network, *p.rates);
}

double sup_norm(const std::vector<double>& v) {
  double m = 0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

// Exact check of a verdict, entry by entry.
bool verdict_holds(const ReactionNetwork& net, const ConsistencyVerdict& v) {
  std::vector<std::vector<int>> vecs;
  for (std::size_t e = 0; e < net.num_edges(); ++e) vecs.push_back(reaction_vector(net, e));
  if (const auto* c = std::get_if<Consistent>(&v)) {
    if (c->lambda.size() != vecs.size()) return false;
    for (const auto& l : c->lambda)
      if (l < 1) return false;
    for (std::size_t i = 0; i < net.num_species(); ++i) {
      Rational s = 0;
      for (std::size_t e = 0; e < vecs.size(); ++e) s += c->lambda[e] * vecs[e][i];
      if (s != 0) return false;
    }
    return true;
  }
  const auto& w = std::get<Inconsistent>(v).w;
  if (w.size() != net.num_species()) return false;
  bool strict = false;
  for (const auto& y : vecs) {
    Rational s = 0;
    for (std::size_t i = 0; i < y.size(); ++i) s += w[i] * y[i];
    if (s > 0) return false;
    strict = strict || s < 0;
  }
  return strict;
}

Outcome criterion_1() {
  Outcome o;
  auto t0 = Clock::now();
  auto sys = with_file_rates("autocatalytic.crn");
  IntegrateOptions opts;
  opts.t_end = 200;
  auto tr = integrate(sys, std::vector<double>{0.4, 0.3, 0.3}, opts);
  double secs = seconds_since(t0);
  const auto& x = tr.states.back();
  double err = std::max({std::abs(x[0] - 1), std::abs(x[1]), std::abs(x[2])});
  if (!(err < 1e-4)) o.fail("|x(200) - (1,0,0)| = " + std::to_string(err));
  if (!(secs < 1.0)) o.fail("runtime " + std::to_string(secs) + " s");
  if (o.pass) o.detail = "err " + std::to_string(err) + ", " + std::to_string(secs) + " s";
  return o;
}

// Root of 2x + x/(1-x^2) = 1 on (0, 1/2) by bisection.
double ivanova_root() {
  double lo = 0.0, hi = 0.5;
  for (int i = 0; i < 200; ++i) {
    double mid = 0.5 * (lo + hi);
    double g = 2 * mid + mid / (1 - mid * mid) - 1;
    (g > 0 ? hi : lo) = mid;
  }
  return 0.5 * (lo + hi);
}

Outcome criterion_2() {
  Outcome o;
  auto sys = with_file_rates("modified_ivanova.crn");
  auto eq = refine_equilibrium(sys, std::vector<double>{0.32, 0.35, 0.33});
  double x = ivanova_root();
  std::vector<double> oracle{x, x / (1 - x * x), x};
  double err = 0;
  for (int i = 0; i < 3; ++i) err = std::max(err, std::abs(eq[static_cast<std::size_t>(i)] - oracle[static_cast<std::size_t>(i)]));
  double res = sup_norm(rhs(sys, eq));
  if (!(err < 1e-3)) o.fail("distance to oracle " + std::to_string(err));
  if (!(res < 1e-10)) o.fail("|rhs| = " + std::to_string(res));
  char buf[160];
  std::snprintf(buf, sizeof buf, "(%.5f, %.5f, %.5f), oracle err %.1e, |rhs| %.1e", eq[0], eq[1], eq[2], err, res);
  if (o.pass) o.detail = buf;
  return o;
}

Outcome criterion_3() {
  Outcome o;
  auto t0 = Clock::now();
  auto p = fixtures::load("modified_ivanova.crn");
  MassActionSystem sys(p.network, *p.rates);
  IntegrateOptions opts;
  opts.t_end = 2000;
  opts.dense_output_stride = 0.5;
  auto tr = integrate(sys, std::vector<double>{0.4, 0.3, 0.3}, opts);
  auto fates = trajectory_extinction_report(tr, 0.02, kDefaultEpsStrong);
  double drift = conservation_drift(tr, p.network, RatVector{1, 1, 1});
  double secs = seconds_since(t0);
  std::string detail;
  for (std::size_t i = 0; i < fates.size(); ++i) {
    const auto& f = fates[i];
    if (!(f.running_min < 0.02)) o.fail(p.network.species()[i].name + " running_min " + std::to_string(f.running_min));
    if (!(f.tail_max > 0.3)) o.fail(p.network.species()[i].name + " tail_max " + std::to_string(f.tail_max));
    char buf[96];
    std::snprintf(buf, sizeof buf, "%s min %.1e max %.3f; ", p.network.species()[i].name.c_str(), f.running_min,
                  f.tail_max);
    detail += buf;
  }
  if (!(drift <= 1e-6)) o.fail("drift " + std::to_string(drift));
  if (!(secs < 10.0)) o.fail("runtime " + std::to_string(secs) + " s");
  char buf[96];
  std::snprintf(buf, sizeof buf, "drift %.1e, %.2f s", drift, secs);
  if (o.pass) o.detail = detail + buf;
  return o;
}

std::vector<ReactionNetwork> random_corpus() {
  std::mt19937 rng(20240501);
  std::vector<ReactionNetwork> nets;
  for (int i = 0; i < 500; ++i) nets.push_back(fixtures::random_network(rng, 4, 6, 3));
  return nets;
}

Outcome criterion_4(const std::vector<ReactionNetwork>& corpus) {
  Outcome o;
  std::mt19937 rng(4);
  int inconsistent = 0;
  for (std::size_t n = 0; n < corpus.size(); ++n) {
    const auto& net = corpus[n];
    auto v = is_consistent(net);
    if (!verdict_holds(net, v)) {
      o.fail("certificate rejected on network " + std::to_string(n));
      continue;
    }
    const auto* inc = std::get_if<Inconsistent>(&v);
    if (!inc) continue;
    ++inconsistent;
    MassActionSystem sys(net, fixtures::random_rates(rng, net.num_edges(), 0.1, 10.0));
    for (int s = 0; s < 20; ++s) {
      auto x = fixtures::random_positive(rng, net.num_species(), 0.05, 3.0);
      double d = vdot(sys, inc->w, x);
      if (!(d < 0)) o.fail("vdot = " + std::to_string(d) + " on network " + std::to_string(n));
    }
  }
  if (o.pass)
    o.detail = std::to_string(corpus.size()) + " networks, " + std::to_string(inconsistent) + " inconsistent";
  return o;
}

Outcome criterion_5(const std::vector<ReactionNetwork>& corpus) {
  Outcome o;
  int zero = 0;
  for (std::size_t n = 0; n < corpus.size(); ++n) {
    long d = fixtures::oracle_deficiency(corpus[n]);
    bool diag = deficiency_zero_diagnostics(corpus[n]).deficiency_zero();
    if (diag != (d == 0)) o.fail("disagreement on network " + std::to_string(n));
    if (deficiency(corpus[n]).deficiency != d) o.fail("deficiency mismatch on network " + std::to_string(n));
    zero += d == 0;
  }
  if (o.pass) o.detail = std::to_string(zero) + " of " + std::to_string(corpus.size()) + " have deficiency zero";
  return o;
}

std::vector<ReactionNetwork> glued_corpus() {
  std::mt19937 rng(606);
  std::vector<ReactionNetwork> nets;
  for (int i = 0; i < 100; ++i) nets.push_back(fixtures::random_deficiency_zero_non_wr(rng));
  return nets;
}

Outcome criterion_6(const std::vector<ReactionNetwork>& corpus) {
  Outcome o;
  for (std::size_t n = 0; n < corpus.size(); ++n) {
    const auto& net = corpus[n];
    if (fixtures::oracle_deficiency(net) != 0 || is_weakly_reversible(net)) {
      o.fail("generator produced an unsuitable network " + std::to_string(n));
      continue;
    }
    DeficiencyZeroLyapunov dz;
    try {
      dz = construct_w_deficiency_zero(net);
    } catch (const std::exception& e) {
      o.fail("network " + std::to_string(n) + ": " + e.what());
      continue;
    }
    std::set<std::size_t> one(dz.trace.part_one.begin(), dz.trace.part_one.end());
    std::optional<Rational> crossing;
    for (std::size_t e = 0; e < net.num_edges(); ++e) {
      auto y = reaction_vector(net, e);
      Rational d = 0;
      for (std::size_t i = 0; i < y.size(); ++i) d += dz.lyapunov.w[i] * y[i];
      bool inside = one.count(net.edges()[e].source) == one.count(net.edges()[e].target);
      if (inside && d != 0) o.fail("within-part dot nonzero on network " + std::to_string(n));
      if (!inside) {
        if (!(d < 0) || (crossing && *crossing != d)) o.fail("crossing dots on network " + std::to_string(n));
        crossing = d;
      }
    }
    if (!crossing) o.fail("no crossing edge on network " + std::to_string(n));
    // dim S_G = dim S_G1 + dim S_G2 + 1 with ranks recomputed independently.
    std::vector<std::vector<long long>> all, g1, g2;
    for (std::size_t e = 0; e < net.num_edges(); ++e) {
      auto y = reaction_vector(net, e);
      std::vector<long long> row(y.begin(), y.end());
      all.push_back(row);
      bool s1 = one.count(net.edges()[e].source) == 1, t1 = one.count(net.edges()[e].target) == 1;
      if (s1 && t1) g1.push_back(row);
      if (!s1 && !t1) g2.push_back(row);
    }
    if (fixtures::oracle_rank(all) != fixtures::oracle_rank(g1) + fixtures::oracle_rank(g2) + 1)
      o.fail("dimension identity fails on network " + std::to_string(n));
  }
  if (o.pass) o.detail = std::to_string(corpus.size()) + " constructions verified";
  return o;
}

Outcome criterion_7(const std::vector<ReactionNetwork>& corpus) {
  Outcome o;
  std::mt19937 rng(7);
  double smallest = INFINITY;
  for (std::size_t n = 0; n < corpus.size(); ++n) {
    const auto& net = corpus[n];
    for (int r = 0; r < 5; ++r) {
      MassActionSystem sys(net, fixtures::random_rates(rng, net.num_edges(), 0.1, 10.0));
      for (int s = 0; s < 100; ++s) {
        double norm = sup_norm(rhs(sys, fixtures::random_positive(rng, net.num_species(), 0.05, 3.0)));
        smallest = std::min(smallest, norm);
        if (!(norm > 0)) o.fail("zero vector field on network " + std::to_string(n));
      }
    }
  }
  if (o.pass) o.detail = "smallest |rhs| " + std::to_string(smallest);
  return o;
}

Outcome criterion_8() {
  Outcome o;
  std::mt19937 rng(808);
  for (int n = 0; n < 200; ++n) {
    auto net = fixtures::random_cycle_union(rng);
    auto v = is_consistent(net);
    if (!std::holds_alternative<Consistent>(v) || !verdict_holds(net, v))
      o.fail("cycle union " + std::to_string(n) + " not certified consistent");
  }
  if (o.pass) o.detail = "200 cycle unions consistent";
  return o;
}

Outcome criterion_9() {
  Outcome o;
  auto p = fixtures::load("chain.crn");
  MassActionSystem sys(p.network, RateAssignment({1.0, 1.0}));
  IntegrateOptions opts;
  opts.t_end = 30;
  auto tr = integrate(sys, std::vector<double>{1, 0, 0}, opts);
  double err = 0;
  for (std::size_t s = 0; s < tr.times.size(); ++s) {
    double t = tr.times[s];
    err = std::max(err, std::abs(tr.states[s][0] - std::exp(-t)));
    err = std::max(err, std::abs(tr.states[s][1] - t * std::exp(-t)));
  }
  if (!(err < 1e-6)) o.fail("max error vs analytic " + std::to_string(err));
  auto set = strong_extinction_species_linear(p.network);
  if (set.species != std::vector<std::size_t>{0, 1}) o.fail("strong set is not {A, B}");
  if (set.layers != std::vector<std::vector<std::size_t>>{{1}, {0}}) o.fail("layering is not N1={B}, N2={A}");
  char buf[96];
  std::snprintf(buf, sizeof buf, "max error %.1e over %zu samples; {A,B}, N1={B}, N2={A}", err, tr.times.size());
  if (o.pass) o.detail = buf;
  return o;
}

Outcome criterion_10() {
  Outcome o;
  std::pair<const char*, long> goldens[] = {{"single.crn", 0}, {"autocatalytic.crn", 1}, {"modified_ivanova.crn", 2}};
  for (auto [name, expected] : goldens) {
    auto d = deficiency(fixtures::load(name).network).deficiency;
    if (d != expected) o.fail(std::string(name) + " deficiency " + std::to_string(d));
  }
  if (o.pass) o.detail = "A->B 0, autocatalytic network 1, modified Ivanova 2";
  return o;
}

Outcome criterion_11() {
  Outcome o;
  int count = 0;
  for (const auto& name : fixtures::fixture_names()) {
    auto p = fixtures::load(name);
    auto q = parse_network(format_network(p.network, p.rates));
    if (!(q.network == p.network) || !(q.rates == p.rates)) o.fail("round trip changed " + name);
    ++count;
  }
  std::mt19937 rng(1111);
  for (int n = 0; n < 200; ++n) {
    auto net = fixtures::random_network(rng);
    std::optional<RateAssignment> rates;
    if (n % 2) rates = fixtures::random_rates(rng, net.num_edges(), 1e-3, 1e3);
    auto q = parse_network(format_network(net, rates));
    if (!(q.network == net) || !(q.rates == rates)) o.fail("round trip changed random network " + std::to_string(n));
    ++count;
  }
  if (o.pass) o.detail = std::to_string(count) + " networks";
  return o;
}

Outcome criterion_12() {
  Outcome o;
  std::mt19937 rng(1212);
  double worst = 0;
  for (const auto& name : fixtures::fixture_names()) {
    auto p = fixtures::load(name);
    MassActionSystem sys(p.network, *p.rates);
    std::size_t n = p.network.num_species();
    for (int s = 0; s < 20; ++s) {
      auto x = fixtures::random_positive(rng, n, 0.1, 2.0);
      auto jac = jacobian(sys, x);
      double diff = 0, scale = 0;
      for (std::size_t j = 0; j < n; ++j) {
        double h = 1e-6 * (1 + std::abs(x[j]));
        auto xp = x, xm = x;
        xp[j] += h;
        xm[j] -= h;
        auto fp = fixtures::oracle_rhs(p.network, p.rates->values(), xp);
        auto fm = fixtures::oracle_rhs(p.network, p.rates->values(), xm);
        for (std::size_t i = 0; i < n; ++i) {
          diff = std::max(diff, std::abs((fp[i] - fm[i]) / (2 * h) - jac[i][j]));
          scale = std::max(scale, std::abs(jac[i][j]));
        }
      }
      double rel = scale > 0 ? diff / scale : diff;
      worst = std::max(worst, rel);
      if (!(rel < 1e-6)) o.fail(name + " relative error " + std::to_string(rel));
    }
  }
  char buf[64];
  std::snprintf(buf, sizeof buf, "worst relative error %.1e", worst);
  if (o.pass) o.detail = buf;
  return o;
}

}  // namespace

int main() {
  auto corpus = random_corpus();
  auto glued = glued_corpus();
  std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"autocatalytic network converges to (1,0,0) by t=200", criterion_1},
      {"modified Ivanova interior equilibrium", criterion_2},
      {"modified Ivanova spiral envelope and conservation", criterion_3},
      {"consistency certificates and decreasing linear Lyapunov functions", [&] { return criterion_4(corpus); }},
      {"linkage-class characterization of deficiency zero", [&] { return criterion_5(corpus); }},
      {"deficiency-zero Lyapunov construction", [&] { return criterion_6(glued); }},
      {"no positive equilibria for deficiency-zero non-weakly-reversible networks", [&] { return criterion_7(glued); }},
      {"weakly reversible networks are consistent", criterion_8},
      {"first-order chain: analytic solution and strong extinction set", criterion_9},
      {"deficiency goldens", criterion_10},
      {"parser round trip", criterion_11},
      {"jacobian against finite differences", criterion_12},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o.fail(std::string("exception: ") + e.what());
    }
    failures += !o.pass;
    std::printf("%s %2zu  %s  [%s]\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(), o.detail.c_str());
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
