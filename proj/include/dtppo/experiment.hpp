#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "dtppo/csv.hpp"
#include "dtppo/train.hpp"

namespace dtppo {

struct ExperimentConfig {
  EnvKind env = EnvKind::cartpole;
  int maze_size = 5;  // used iff env == maze
  AgentKind agent = AgentKind::ppo;
  int episodes = 500;
  int runs = 10;  // desk-scale default; full studies pass 100
  std::uint64_t master_seed = 0;
  std::string output_path;
  TrainOptions options;  // its episodes field is overridden by `episodes`
  int threads = 0;       // 0 => hardware concurrency
};

void validate(const ExperimentConfig& config);

// Deterministic child seed for run `index` under `master_seed`.
std::uint64_t run_seed(std::uint64_t master_seed, int index);

// Executes config.runs independent trainings on a small work pool of
// threads. Each run is fully independent (own environment, parameters, and
// RNG streams); records are returned sorted by (run_id, episode), so the
// output is identical regardless of scheduling.
std::vector<RunRecord> execute_runs(const ExperimentConfig& config);

// execute_runs + CSV written to config.output_path.
void run_experiment(const ExperimentConfig& config);

// One labeled input to aggregation (label = source file stem in the CLI).
struct AgentSeries {
  std::string agent;
  std::vector<RunRecord> records;
};

// Cross-run per-episode mean and sample standard deviation per agent, plus
// one overall row per agent (episode -1) carrying the all-episode mean
// reward and the mean wall time per environment step. All inputs must have
// the same per-run episode count.
std::vector<SummaryRecord> aggregate(std::span<const AgentSeries> inputs);

}  // namespace dtppo
