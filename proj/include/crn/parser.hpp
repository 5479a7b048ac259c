#pragma once

// Line-oriented reaction DSL (.crn files).
//
//   # comment
//   species X1 X2 X3            optional; fixes species order
//   X1 + X2 -> 2 X1 ; k = 1     one reaction per line
//   0 -> X ; k = 1/2            "0" is the empty complex
//   A <-> B ; k = 1, 2          reversible pair (forward, reverse)
//
// Rates are all-or-nothing: either every reaction line carries "; k = ..."
// or none does.

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "crn/network.hpp"

namespace crn {

struct ParseDiagnostic {
  std::size_t line = 1;    // 1-based
  std::size_t column = 1;  // 1-based
  std::string message;
};

enum class ParseErrorKind { Syntax, MixedRates, DuplicateEdge, NonpositiveRate };

class ParseError : public std::runtime_error {
 public:
  ParseError(ParseErrorKind kind, std::vector<ParseDiagnostic> diagnostics);

  ParseErrorKind kind() const noexcept { return kind_; }
  const std::vector<ParseDiagnostic>& diagnostics() const noexcept { return diagnostics_; }

 private:
  ParseErrorKind kind_;
  std::vector<ParseDiagnostic> diagnostics_;
};

struct ParsedNetwork {
  ReactionNetwork network;
  std::optional<RateAssignment> rates;
};

ParsedNetwork parse_network(std::string_view text);

std::string format_network(const ReactionNetwork& net,
                           const std::optional<RateAssignment>& rates = std::nullopt);

}  // namespace crn
