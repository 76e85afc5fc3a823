#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "bcs/experiments.hpp"

namespace bcs {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitFailure = 2;

// Environment variable consulted for the default seed.
inline constexpr const char* kSeedEnvVar = "BCS_SEED";

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A parsed and validated command line. Only the fields relevant to
// `subcommand` are meaningful.
struct CliCommand {
  std::string subcommand;  // gen-matrix | solve | exp1 | exp2 | oracle

  std::uint64_t seed = 1;
  std::string out;

  // gen-matrix
  Index m = 40;
  Index n = 100;
  std::optional<double> signal_p;
  std::string signal_out;
  std::string measurements_out;

  // solve / oracle
  std::string matrix_path;
  std::string measurements_path;
  std::vector<SolverId> solvers;
  double prior_p = 0.5;
  double oracle_tol = 1e-6;
  SolverSettings settings;

  // exp1
  Exp1Config exp1;
  std::string raw_out;
  std::string plot_dir;

  // exp2
  Exp2Config exp2;
  std::string image_path;
};

// Parses argv-style arguments (without the program name). `env_seed` is the
// value of BCS_SEED, if set; an explicit --seed wins. Throws UsageError with a
// one-line message on unknown flags, missing required flags or invalid values.
CliCommand parse_cli(const std::vector<std::string>& args,
                     std::optional<std::string> env_seed = std::nullopt);

// Executes a parsed command, writing human-readable progress to `log`.
// Throws on runtime failure.
void run_command(const CliCommand& command, std::ostream& log);

// Full entry point: parse, run, map failures to exit codes.
int cli_main(int argc, const char* const* argv, std::ostream& log, std::ostream& err);

}  // namespace bcs
