/// @file  commands.hpp
/// @brief The `wfts` command-line front end, callable in-process for tests

#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "wfts/analysis.hpp"

namespace wfts::cli {

enum ExitCode : int {
  kOk = 0,
  kUsage = 1,
  kModelError = 2,
  kMismatch = 3,
};

enum class Format { Table, Json, Csv };
enum class StrategyChoice { Family, Product, Both };

struct RunConfig {
  std::string command;
  /// A `.wfts` path, or empty when generators are used.
  std::string path;
  std::vector<std::string> generators;
  Mode mode = Mode::Max;
  StrategyChoice strategy = StrategyChoice::Family;
  Format format = Format::Table;
  unsigned reps = 5;
  std::uint64_t seed = 1;
  unsigned count = 100;
  bool parallel = false;
  bool noTiming = false;
  std::string expect;
  bool dot = false;
};

struct Terminal {
  std::ostream& out;
  std::ostream& err;
  bool color = false;
};

/// Parses arguments and runs the selected subcommand. Returns an ExitCode.
int run(int argc, const char* const* argv, Terminal& term);

int cmdAnalyze(const RunConfig& cfg, Terminal& term);
int cmdBench(const RunConfig& cfg, Terminal& term);
int cmdValidate(const RunConfig& cfg, Terminal& term);
int cmdTree(const RunConfig& cfg, Terminal& term);

struct TimingStats {
  double meanMs = 0.0;
  /// Sample standard deviation relative to the mean, in percent; 0 for one sample.
  double relStddevPct = 0.0;
};

TimingStats summarize(const std::vector<double>& samplesMs);

} // namespace wfts::cli
