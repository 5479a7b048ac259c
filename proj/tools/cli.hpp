#pragma once

#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "crn/network.hpp"

namespace crn::cli {

constexpr int kExitOk = 0;
constexpr int kExitInternal = 1;
constexpr int kExitUser = 2;

// Bad flags, unreadable files and other problems the user can fix.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// "0.4,0.3,0.3" -> {0.4, 0.3, 0.3}.
std::vector<double> parse_number_list(std::string_view text);

/// Rate spec for --k: a bare value applies to every edge, "e<i>=v" entries
/// override single edges, e.g. "1", "e0=1.5,e2=0.3" or "1,e2=3". Entries
/// override `base` (rates read from the file) when given.
RateAssignment resolve_rates(std::string_view spec, std::size_t num_edges, const std::optional<RateAssignment>& base);

/// Full command line, argv[0] included. Returns the process exit code.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace crn::cli
