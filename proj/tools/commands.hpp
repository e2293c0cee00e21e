#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>

namespace torus::cli {

/// Process exit status of every command.
enum ExitCode : int {
  kOk = 0,
  kSchema = 1,
  kUnclassifiable = 2,
  kSolver = 3,
  kOracleFailure = 4,
};

struct Options {
  std::filesystem::path input;
  /// Artifact directory; created on demand. Without it solve writes to the
  /// working directory and the other commands only print.
  std::optional<std::filesystem::path> out;
  std::uint64_t seed = 42;
  /// Overrides the trial count of the oracle block.
  std::optional<int> trials;
};

int run_classify(const Options& options, std::ostream& out, std::ostream& err);
int run_solve(const Options& options, std::ostream& out, std::ostream& err);
int run_witness(const Options& options, std::ostream& out, std::ostream& err);
int run_oracle_check(const Options& options, std::ostream& out, std::ostream& err);
/// The input is a field CSV as written by solve, not a problem file.
int run_fit_decay(const Options& options, std::ostream& out, std::ostream& err);

}  // namespace torus::cli
