#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "dtppo/dt_agent.hpp"
#include "dtppo/guidance.hpp"
#include "dtppo/ppo.hpp"
#include "dtppo/task_env.hpp"

namespace dtppo {

enum class AgentKind { dt, ppo, dtppo, tlppo };

std::string to_string(AgentKind kind);
AgentKind agent_kind_from_string(const std::string& name);

struct TrainOptions {
  int episodes = 500;
  PpoConfig ppo;
  DtConfig dt;
  GuidanceConfig guidance;
  // Transfer-learning agent: plain-PPO pretraining phase on a small maze.
  int tl_pretrain_episodes = 100;
  int tl_pretrain_maze_size = 3;
  // When non-empty, the tlppo parameter snapshot taken at transfer time is
  // also written to this path.
  std::string tl_snapshot_path;
};

struct EpisodeRecord {
  double accumulated_reward = 0.0;
  int steps = 0;
  std::int64_t cumulative_wall_ns = 0;  // wall time from training start
};

struct TrainResult {
  std::vector<EpisodeRecord> episodes;           // exactly `episodes` entries
  std::vector<EpisodeRecord> pretrain_episodes;  // tlppo only; excluded above
  std::int64_t total_env_steps = 0;
  std::int64_t total_wall_ns = 0;
};

// Trains (or for the DT agent, simply runs) one agent for options.episodes
// episodes and logs each episode's accumulated reward in completion order.
// Deterministic given (agent, env_spec, options, seed) except for the wall
// time fields.
TrainResult train(AgentKind agent, const EnvSpec& env_spec, const TrainOptions& options,
                  std::uint64_t seed);

}  // namespace dtppo
