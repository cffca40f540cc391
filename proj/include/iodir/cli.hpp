// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>

namespace iodir::cli {

enum ExitCode : int { kOk = 0, kValidationFailure = 1, kIoError = 2 };

enum class Command { None, Robustness, Probabilities, Game, Validate };

struct RunConfig {
  Command command = Command::None;

  std::string setup = "qtf";  // "qtf" or a setup JSON path
  std::string witness;        // witness JSON path
  std::string decomposition;  // decomposition CSV path
  std::string pairs;          // gate-pair JSON path
  std::string counts_in;      // probability/counts CSV path
  std::string strategy = "qtf";  // qtf | switch | both
  bool setup_given = false;
  bool strategy_given = false;

  std::string out;
  std::string summary_out;
  std::string witness_out;
  std::string decomposition_out;

  bool restricted = false;
  bool include_matrices = false;
  bool all_terms = false;
  bool gate_table = false;
  bool definite = false;
  std::string convention;  // empty: all four
  std::string target = "0";

  std::optional<double> tol;
  std::uint64_t seed = 0;
  std::int64_t shots = 0;
  int repetitions = 100;
  double p_max = 0.89;
  std::optional<std::string> pmax_sdp;  // direction
};

// Parses argv and runs one command. Returns the process exit status.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

int run_config(const RunConfig& cfg, std::ostream& out, std::ostream& err);

}  // namespace iodir::cli
