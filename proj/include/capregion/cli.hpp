#pragma once

// Command-line front end. Every command writes one JSON report to stdout
// (or a human-readable table with --pretty).

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace capregion::cli {

enum class Command {
  Place,
  Check,
  Bounds,
  Decompose,
  RouteMc,
  IaDemo,
  Rayleigh,
  RayleighOuter,
  Table1,
};

enum ExitCode : int { kSuccess = 0, kInfeasible = 1, kInvalidInput = 2 };

struct RunConfig {
  Command command = Command::Table1;
  std::string placement_path;
  std::string traffic_path;
  std::string out_path;  // empty: stdout
  std::string kind;      // grid|uniform for place, uc|mc for check/bounds
  double alpha = 4.0;
  std::optional<std::uint64_t> seed;
  std::size_t n = 0;
  double r_min = 1.0;
  bool scale_to_region = false;
  std::size_t n_pairs = 2;
  int quantization = 4;
  std::uint64_t horizon = 0;
  std::uint64_t slots = 0;
  bool pretty = false;
};

// Parses argv-style arguments (without the program name). Help requests and
// parse errors come back as an exit code with the message already written.
struct ParseResult {
  std::optional<RunConfig> config;
  int exit_code = kSuccess;
};
ParseResult parse_args(const std::vector<std::string>& args, std::ostream& out,
                       std::ostream& err);

int execute(const RunConfig& cfg, std::ostream& out, std::ostream& err);

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace capregion::cli
