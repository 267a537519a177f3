#pragma once

// Orchestration behind the CLI subcommands. Each function is usable from
// tests without going through argument parsing.

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <utility>
#include <vector>

#include "ndp/checkpoint.hpp"
#include "ndp/config.hpp"
#include "ndp/metrics.hpp"

namespace ndp {

inline constexpr const char* kCheckpointFile = "checkpoint.bin";
inline constexpr const char* kConfigSnapshot = "config.json";

struct EvalPoint {
  std::size_t generation = 0;
  double mean = 0.0;
  double std = 0.0;
};

struct TrainResult {
  EsState state;
  std::vector<EvalPoint> evals;
  // Diversity at every growth step (0..growth_steps) of the last
  // generation's best candidate; empty for non-developmental encodings.
  std::vector<std::optional<double>> growth_diversity;
};

struct TrainOptions {
  bool resume = false;
  std::ostream* progress = nullptr;
};

TrainResult cmd_train(const RunConfig& config, const TrainOptions& options = {});

struct EvalSummary {
  double mean = 0.0;
  double std = 0.0;
  std::vector<double> returns;
};

// Evaluates the checkpoint's best genome with the config snapshot stored next to it.
EvalSummary cmd_eval(const std::filesystem::path& checkpoint, std::size_t episodes, std::uint64_t seed);

// Writes step_NN.json snapshots (step 0 .. growth_steps); returns the file paths.
std::vector<std::filesystem::path> cmd_trace(const std::filesystem::path& checkpoint, std::uint64_t seed,
                                             const std::filesystem::path& out_dir);

// The two conditions of the diversity experiment: NDP without intrinsic
// states, with and without lateral inhibition, in sibling run directories.
std::pair<RunConfig, RunConfig> diversity_conditions(const RunConfig& base);

struct DiversityResult {
  std::vector<std::optional<double>> with_inhibition;
  std::vector<std::optional<double>> without_inhibition;
};

// Trains both conditions and writes diversity_paired.csv into base.run_dir.
DiversityResult cmd_diversity(const RunConfig& base, std::ostream* progress = nullptr);

}  // namespace ndp
