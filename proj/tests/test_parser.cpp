#include <doctest.h>

#include "crn/parser.hpp"
#include "fixtures.hpp"

using namespace crn;

namespace {

ParseError parse_failure(std::string_view text) {
  try {
    parse_network(text);
  } catch (const ParseError& e) {
    return e;
  }
  FAIL("expected a parse error");
  return ParseError(ParseErrorKind::Syntax, {});
}

}  // namespace

TEST_CASE("single reaction with a rate") {
  auto p = parse_network("X1 + X2 -> 2 X1 ; k = 1");
  CHECK(p.network.species_names() == std::vector<std::string>{"X1", "X2"});
  REQUIRE(p.network.num_edges() == 1);
  CHECK(p.network.vertices()[0].coeffs == std::vector<int>{1, 1});
  CHECK(p.network.vertices()[1].coeffs == std::vector<int>{2, 0});
  REQUIRE(p.rates.has_value());
  CHECK(p.rates->values() == std::vector<double>{1.0});
}

TEST_CASE("empty complex and fractions") {
  auto p = parse_network("0 -> X ; k = 2\nX -> 0 ; k = 3/4");
  CHECK(p.network.vertices()[0].coeffs == std::vector<int>{0});
  CHECK(p.network.vertices()[1].coeffs == std::vector<int>{1});
  CHECK(p.rates->values() == std::vector<double>{2.0, 0.75});
}

TEST_CASE("malformed term points at the arrow") {
  auto e = parse_failure("X + -> Y");
  CHECK(e.kind() == ParseErrorKind::Syntax);
  REQUIRE(!e.diagnostics().empty());
  CHECK(e.diagnostics()[0].line == 1);
  CHECK(e.diagnostics()[0].column == 5);
}

TEST_CASE("diagnostics from several lines are collected") {
  auto e = parse_failure("A -> B\nB -> + C\nC -> D ->");
  CHECK(e.diagnostics().size() >= 2);
  CHECK(e.diagnostics()[0].line == 2);
  CHECK(e.diagnostics()[1].line == 3);
}

TEST_CASE("rate errors") {
  CHECK(parse_failure("A -> B ; k = 1\nB -> C").kind() == ParseErrorKind::MixedRates);
  auto np = parse_failure("A -> B ; k = 0");
  CHECK(np.kind() == ParseErrorKind::NonpositiveRate);
  CHECK(np.diagnostics()[0].column == 14);
  CHECK(parse_failure("A -> B ; k = 0/3").kind() == ParseErrorKind::NonpositiveRate);
  CHECK(parse_failure("A -> B\nA -> B").kind() == ParseErrorKind::DuplicateEdge);
  CHECK(parse_failure("").diagnostics()[0].message == "no reactions found");
  CHECK(parse_failure("A -> 0 X").kind() == ParseErrorKind::Syntax);
  CHECK(parse_failure("0 A -> B").kind() == ParseErrorKind::Syntax);
}

TEST_CASE("reversible shorthand") {
  auto p = parse_network("A <-> B ; k = 2, 1");
  REQUIRE(p.network.num_edges() == 2);
  CHECK(p.network.edges()[0].source == p.network.edges()[1].target);
  CHECK(p.rates->values() == std::vector<double>{2.0, 1.0});
  auto q = parse_network("A <-> B ; k = 3");
  CHECK(q.rates->values() == std::vector<double>{3.0, 3.0});
  CHECK_THROWS_AS(parse_network("A -> B ; k = 1, 2"), ParseError);
}

TEST_CASE("species header, comments and merging") {
  auto p = parse_network("# leading comment\nspecies C, B A\nA + A -> B  # trailing\n");
  CHECK(p.network.species_names() == std::vector<std::string>{"C", "B", "A"});
  CHECK(p.network.vertices()[0].coeffs == std::vector<int>{0, 0, 2});
  CHECK_FALSE(p.rates.has_value());
  CHECK_THROWS_AS(parse_network("A -> B\nspecies A B"), ParseError);
}

TEST_CASE("format matches the canonical text") {
  auto p = fixtures::load("autocatalytic.crn");
  CHECK(format_network(p.network) == "X1 + X2 -> 2 X1\nX2 + X3 -> X1 + X3\nX1 + X3 -> 2 X1\n");
  auto q = parse_network("X -> 0");
  CHECK(format_network(q.network) == "X -> 0\n");
  auto r = parse_network("species B A\nA -> B");
  CHECK(format_network(r.network) == "species B A\nA -> B\n");
}

TEST_CASE("round trip on fixtures") {
  for (const auto& name : fixtures::fixture_names()) {
    CAPTURE(name);
    auto p = fixtures::load(name);
    auto q = parse_network(format_network(p.network, p.rates));
    CHECK(q.network == p.network);
    CHECK(q.rates == p.rates);
    CHECK(format_network(q.network, q.rates) == format_network(p.network, p.rates));
  }
}

TEST_CASE("round trip on random networks with random rates") {
  std::mt19937 rng(2024);
  for (int trial = 0; trial < 300; ++trial) {
    auto net = fixtures::random_network(rng);
    std::optional<RateAssignment> rates;
    if (trial % 2) rates = fixtures::random_rates(rng, net.num_edges(), 1e-3, 1e3);
    auto q = parse_network(format_network(net, rates));
    CHECK(q.network == net);
    CHECK(q.rates == rates);
  }
}

TEST_CASE("parsing is total on random garbage") {
  std::mt19937 rng(99);
  const std::string alphabet = "AB01 2+-<>;k=,/#\n.e_xX\t";
  std::uniform_int_distribution<std::size_t> len(0, 40), pick(0, alphabet.size() - 1);
  for (int trial = 0; trial < 3000; ++trial) {
    std::string text;
    std::size_t n = len(rng);
    for (std::size_t i = 0; i < n; ++i) text += alphabet[pick(rng)];
    try {
      auto p = parse_network(text);
      CHECK(p.network.num_edges() > 0);
    } catch (const ParseError& e) {
      CHECK(!e.diagnostics().empty());
      for (const auto& d : e.diagnostics()) CHECK(d.line >= 1);
    }
  }
}
