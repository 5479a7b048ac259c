#include "cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cstdio>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "crn/dynamics.hpp"
#include "crn/error.hpp"
#include "crn/extinction.hpp"
#include "crn/parser.hpp"
#include "crn/plot.hpp"
#include "crn/report.hpp"
#include "crn/structure.hpp"

namespace crn::cli {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

double parse_double(std::string_view s) {
  s = trim(s);
  double v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc() || ptr != s.data() + s.size() || !std::isfinite(v))
    throw UsageError("not a number: '" + std::string(s) + "'");
  return v;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= s.size(); ++i)
    if (i == s.size() || s[i] == sep) {
      parts.push_back(s.substr(start, i - start));
      start = i + 1;
    }
  return parts;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot read '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

ParsedNetwork load(const std::string& path) {
  ParsedNetwork parsed = [&] {
    try {
      return parse_network(read_file(path));
    } catch (const ParseError& e) {
      std::string msg;
      for (const auto& d : e.diagnostics()) {
        if (!msg.empty()) msg += "\n";
        msg += path + ":" + std::to_string(d.line) + ":" + std::to_string(d.column) + ": " + d.message;
      }
      throw UsageError(msg.empty() ? path + ": parse error" : msg);
    }
  }();
  auto report = validate_network(parsed.network);
  if (!report.ok()) {
    std::string msg = path + ": invalid network";
    for (const auto& v : report.violations)
      msg += "\n  " + std::string(to_string(v.kind)) + " at index " + std::to_string(v.index) + ": " + v.message;
    throw UsageError(msg);
  }
  return parsed;
}

MassActionSystem make_system(const ParsedNetwork& parsed, const std::string& k_spec) {
  const auto& net = parsed.network;
  if (k_spec.empty()) {
    if (!parsed.rates) throw UsageError("the network has no rate constants; pass --k");
    return MassActionSystem(net, *parsed.rates);
  }
  return MassActionSystem(net, resolve_rates(k_spec, net.num_edges(), parsed.rates));
}

std::vector<double> initial_state(const ReactionNetwork& net, const std::string& x0_text) {
  std::vector<double> x0;
  if (x0_text.empty()) {
    x0.assign(net.num_species(), 1.0 / static_cast<double>(std::max<std::size_t>(net.num_species(), 1)));
  } else {
    x0 = parse_number_list(x0_text);
  }
  if (x0.size() != net.num_species())
    throw UsageError("--x0 has " + std::to_string(x0.size()) + " entries, the network has " +
                     std::to_string(net.num_species()) + " species");
  if (std::any_of(x0.begin(), x0.end(), [](double v) { return v < 0; }))
    throw UsageError("--x0 entries must be nonnegative");
  return x0;
}

std::string state_text(const ReactionNetwork& net, const std::vector<double>& x) {
  std::string out;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (i) out += ", ";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", x[i]);
    out += net.species()[i].name + " = " + buf;
  }
  return out;
}

void print_drift(std::ostream& out, const Trajectory& traj, const ReactionNetwork& net) {
  std::vector<RatVector> laws;
  if (auto c = is_conservative(net))
    laws.push_back(*c);
  else
    laws = conservation_laws(net);
  if (laws.empty()) out << "conservation drift: no conservation laws\n";
  for (const auto& c : laws) out << "conservation drift (c = " << to_string(c) << "): " << conservation_drift(traj, net, c) << "\n";
}

struct Options {
  std::string path;
  bool json = false;
  std::string x0;
  std::string k;
  double t_end = 10.0;
  double rtol = 1e-9;
  double atol = 1e-14;
  double stride = 0.0;
  std::string out_path;
  bool simulate = false;
  double eps_weak = kDefaultEpsWeak;
  double eps_strong = kDefaultEpsStrong;
  std::string svg_path;
  std::string projection = "time-series";
};

int cmd_analyze(const Options& o, std::ostream& out) {
  auto parsed = load(o.path);
  auto report = analyze(parsed.network);
  if (o.json)
    out << to_json(report).dump(2) << "\n";
  else
    out << to_text(report);
  return kExitOk;
}

Trajectory run_integration(const MassActionSystem& sys, const std::vector<double>& x0, const Options& o) {
  IntegrateOptions opts;
  opts.t_end = o.t_end;
  opts.rtol = o.rtol;
  opts.atol = o.atol;
  opts.dense_output_stride = o.stride;
  if (!(o.t_end > 0) || !(o.rtol > 0) || !(o.atol > 0) || o.stride < 0)
    throw UsageError("--t-end, --rtol and --atol must be positive and --stride nonnegative");
  return integrate(sys, x0, opts);
}

int cmd_simulate(const Options& o, std::ostream& out, std::ostream& err) {
  auto parsed = load(o.path);
  auto sys = make_system(parsed, o.k);
  auto x0 = initial_state(parsed.network, o.x0);
  auto traj = run_integration(sys, x0, o);

  std::ostream* summary = &out;
  std::ofstream file;
  if (o.out_path.empty() || o.out_path == "-") {
    write_trajectory_csv(out, traj, parsed.network.species_names());
    summary = &err;
  } else {
    file.open(o.out_path);
    if (!file) throw UsageError("cannot write '" + o.out_path + "'");
    write_trajectory_csv(file, traj, parsed.network.species_names());
  }
  *summary << "final t = " << format_number(traj.times.back()) << "\n";
  *summary << "final state: " << state_text(parsed.network, traj.states.back()) << "\n";
  *summary << "steps: " << traj.meta.accepted_steps << " accepted, " << traj.meta.rejected_steps << " rejected\n";
  print_drift(*summary, traj, parsed.network);
  return kExitOk;
}

int cmd_lyapunov(const Options& o, std::ostream& out) {
  auto parsed = load(o.path);
  auto report = analyze(parsed.network);
  out << lyapunov_text(report);
  return kExitOk;
}

int cmd_extinction(const Options& o, std::ostream& out) {
  auto parsed = load(o.path);
  const auto& net = parsed.network;
  auto report = analyze(net);
  std::optional<std::vector<SpeciesFate>> fates;
  if (o.simulate) {
    if (!(o.eps_strong > 0) || !(o.eps_strong <= o.eps_weak))
      throw UsageError("need 0 < --eps-strong <= --eps-weak");
    auto sys = make_system(parsed, o.k);
    auto traj = run_integration(sys, initial_state(net, o.x0), o);
    fates = trajectory_extinction_report(traj, o.eps_weak, o.eps_strong);
  }
  if (o.json) {
    Json doc;
    doc["consistency"] = to_json(report)["consistency"];
    doc["extinction"] = extinction_to_json(net, report.extinction, report.strong);
    doc["trajectory"] = fates ? fates_to_json(net, *fates, o.eps_weak, o.eps_strong) : Json();
    out << doc.dump(2) << "\n";
    return kExitOk;
  }
  if (const auto* c = std::get_if<Consistent>(&report.consistency))
    out << "consistency: Consistent, lambda = " << to_string(c->lambda) << "\n";
  else
    out << "consistency: Inconsistent, separator w = " << to_string(std::get<Inconsistent>(report.consistency).w)
        << "\n";
  out << extinction_text(report);
  if (fates) out << fates_text(net, *fates, o.eps_weak, o.eps_strong);
  return kExitOk;
}

int cmd_plot(const Options& o, std::ostream& out) {
  std::ifstream in(o.path);
  if (!in) throw UsageError("cannot read '" + o.path + "'");
  auto table = read_trajectory_csv(in);
  auto svg = render_svg(table, parse_projection(o.projection));
  if (o.svg_path.empty() || o.svg_path == "-") {
    out << svg;
  } else {
    std::ofstream file(o.svg_path);
    if (!file) throw UsageError("cannot write '" + o.svg_path + "'");
    file << svg;
  }
  return kExitOk;
}

bool is_user_error(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidArgument:
    case ErrorKind::DimensionMismatch:
    case ErrorKind::NonpositiveState:
    case ErrorKind::NegativeState:
    case ErrorKind::IndexOutOfRange:
      return true;
    default:
      return false;
  }
}

}  // namespace

std::vector<double> parse_number_list(std::string_view text) {
  std::vector<double> values;
  for (auto part : split(text, ',')) values.push_back(parse_double(part));
  return values;
}

RateAssignment resolve_rates(std::string_view spec, std::size_t num_edges, const std::optional<RateAssignment>& base) {
  std::vector<double> k(num_edges, std::nan(""));
  if (base) k = base->values();
  for (auto raw : split(spec, ',')) {
    auto entry = trim(raw);
    auto eq = entry.find('=');
    if (eq == std::string_view::npos) {
      std::fill(k.begin(), k.end(), parse_double(entry));
      continue;
    }
    auto key = trim(entry.substr(0, eq));
    std::size_t edge = 0;
    auto digits = key.substr(std::min<std::size_t>(1, key.size()));
    auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), edge);
    if (key.size() < 2 || key[0] != 'e' || ec != std::errc() || ptr != digits.data() + digits.size())
      throw UsageError("bad --k entry '" + std::string(entry) + "', expected e<index>=<value>");
    if (edge >= num_edges)
      throw UsageError("--k names edge e" + std::to_string(edge) + " but the network has " +
                       std::to_string(num_edges) + " edges");
    k[edge] = parse_double(entry.substr(eq + 1));
  }
  for (std::size_t e = 0; e < k.size(); ++e)
    if (std::isnan(k[e])) throw UsageError("no rate constant for edge e" + std::to_string(e));
  try {
    return RateAssignment(std::move(k));
  } catch (const Error& e) {
    throw UsageError(e.what());
  }
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Structural analysis and simulation of mass-action reaction networks", "crn"};
  app.require_subcommand(1);
  Options o;

  auto* analyze_cmd = app.add_subcommand("analyze", "deficiency, consistency, conservation, Lyapunov and extinction");
  analyze_cmd->add_option("file", o.path, ".crn network file")->required();
  analyze_cmd->add_flag("--json", o.json, "canonical JSON output");

  auto add_sim_options = [&](CLI::App* cmd) {
    cmd->add_option("--x0", o.x0, "initial state, comma separated");
    cmd->add_option("--k", o.k, "rate constants: a value for all edges and/or e<i>=<value> overrides");
    cmd->add_option("--t-end", o.t_end, "final time");
    cmd->add_option("--rtol", o.rtol, "relative tolerance");
    cmd->add_option("--atol", o.atol, "absolute tolerance");
    cmd->add_option("--stride", o.stride, "output spacing in time (0 records every step)");
  };

  auto* simulate_cmd = app.add_subcommand("simulate", "integrate the mass-action system and write a CSV trajectory");
  simulate_cmd->add_option("file", o.path, ".crn network file")->required();
  add_sim_options(simulate_cmd);
  simulate_cmd->add_option("--out", o.out_path, "CSV output path (default stdout)");

  auto* lyapunov_cmd = app.add_subcommand("lyapunov", "linear Lyapunov function and construction trace");
  lyapunov_cmd->add_option("file", o.path, ".crn network file")->required();

  auto* extinction_cmd = app.add_subcommand("extinction", "structural extinction results and trajectory evidence");
  extinction_cmd->add_option("file", o.path, ".crn network file")->required();
  extinction_cmd->add_flag("--simulate", o.simulate, "append evidence from one simulated trajectory");
  add_sim_options(extinction_cmd);
  extinction_cmd->add_option("--eps-weak", o.eps_weak, "weak-extinction threshold on the running minimum");
  extinction_cmd->add_option("--eps-strong", o.eps_strong, "strong-extinction threshold on the tail maximum");
  extinction_cmd->add_flag("--json", o.json, "JSON output");

  auto* plot_cmd = app.add_subcommand("plot", "render a trajectory CSV as SVG");
  plot_cmd->add_option("csv", o.path, "trajectory CSV")->required();
  plot_cmd->add_option("--svg", o.svg_path, "SVG output path (default stdout)");
  plot_cmd->add_option("--projection", o.projection, "simplex or time-series")
      ->check(CLI::IsMember({"simplex", "time-series"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUser;
  }

  try {
    if (analyze_cmd->parsed()) return cmd_analyze(o, out);
    if (simulate_cmd->parsed()) return cmd_simulate(o, out, err);
    if (lyapunov_cmd->parsed()) return cmd_lyapunov(o, out);
    if (extinction_cmd->parsed()) return cmd_extinction(o, out);
    if (plot_cmd->parsed()) return cmd_plot(o, out);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUser;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return is_user_error(e.kind()) ? kExitUser : kExitInternal;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return kExitInternal;
  }
  return kExitInternal;
}

}  // namespace crn::cli
