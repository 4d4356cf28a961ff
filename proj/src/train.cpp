#include "dtppo/train.hpp"

#include <chrono>
#include <sstream>
#include <stdexcept>

#include "dtppo/gae.hpp"
#include "dtppo/rollout.hpp"

namespace dtppo {

namespace {

using Clock = std::chrono::steady_clock;

std::int64_t elapsed_ns(Clock::time_point t0) {
  return std::chrono::duration_cast<std::chrono::nanoseconds>(Clock::now() - t0).count();
}

// Seed-stream indices carved out of one run seed.
constexpr std::uint64_t kEnvStream = 1;
constexpr std::uint64_t kInitStream = 2;
constexpr std::uint64_t kActionStream = 3;
constexpr std::uint64_t kShuffleStream = 4;
constexpr std::uint64_t kPretrainStream = 5;

// The guided pipeline reads its DT softmax temperature from GuidanceConfig;
// clamp and distance floor come from the DT agent configuration.
DtConfig guided_dt_config(const TrainOptions& options) {
  DtConfig config = options.dt;
  config.temperature = options.guidance.dt_temperature;
  return config;
}

// Alternates rollout collection and PPO updates until `episodes` episodes
// have completed, appending one record per completed episode (capped at
// `episodes` entries). The update after the final episode is skipped: it
// could no longer influence any reported episode.
void run_learning_loop(PolicyValueNet& net, AdamState& adam, ActingPolicy& policy,
                       TaskEnv& env, const PpoConfig& config, int episodes,
                       Rng& action_rng, Rng& shuffle_rng, Clock::time_point t0,
                       std::vector<EpisodeRecord>& out, std::int64_t& env_steps) {
  ActorState actor;
  RolloutBuffer buffer;
  int completed = 0;
  const EpisodeCallback on_episode = [&](double accumulated_reward, int steps) {
    if (completed < episodes)
      out.push_back({accumulated_reward, steps, elapsed_ns(t0)});
    ++completed;
  };

  while (completed < episodes) {
    collect_rollout(policy, env, actor, config.rollout_size, action_rng, buffer,
                    on_episode);
    env_steps += config.rollout_size;
    if (completed >= episodes) break;
    compute_gae(buffer, config.gamma, config.gae_lambda);
    ppo_update(net, buffer, config, adam, shuffle_rng);
  }
}

void run_dt_loop(TaskEnv& env, const DtConfig& config, int episodes, Rng& action_rng,
                 Clock::time_point t0, std::vector<EpisodeRecord>& out,
                 std::int64_t& env_steps) {
  env.reset();
  double accumulated = 0.0;
  int steps = 0;
  while (static_cast<int>(out.size()) < episodes) {
    const ActionDistribution probs = env.dt_distribution(config);
    const int action = dt_select_action(probs, action_rng);
    const StepResult step = env.step(action);
    ++env_steps;
    accumulated += step.reward;
    ++steps;
    if (step.done) {
      out.push_back({accumulated, steps, elapsed_ns(t0)});
      accumulated = 0.0;
      steps = 0;
      env.reset();
    }
  }
}

}  // namespace

std::string to_string(AgentKind kind) {
  switch (kind) {
    case AgentKind::dt: return "dt";
    case AgentKind::ppo: return "ppo";
    case AgentKind::dtppo: return "dtppo";
    case AgentKind::tlppo: return "tlppo";
  }
  throw std::logic_error("to_string(AgentKind): invalid value");
}

AgentKind agent_kind_from_string(const std::string& name) {
  if (name == "dt") return AgentKind::dt;
  if (name == "ppo") return AgentKind::ppo;
  if (name == "dtppo") return AgentKind::dtppo;
  if (name == "tlppo") return AgentKind::tlppo;
  throw std::invalid_argument("unknown agent: " + name);
}

TrainResult train(AgentKind agent, const EnvSpec& env_spec, const TrainOptions& options,
                  std::uint64_t seed) {
  if (options.episodes < 1)
    throw std::invalid_argument("train: episodes must be >= 1");
  validate(options.ppo);
  validate(options.guidance);
  if (agent == AgentKind::tlppo) {
    if (env_spec.kind != EnvKind::maze)
      throw std::invalid_argument("tlppo requires a maze environment");
    if (options.tl_pretrain_episodes < 1)
      throw std::invalid_argument("tlppo: pretraining episodes must be >= 1");
    if (env_spec.maze_size <= options.tl_pretrain_maze_size)
      throw std::invalid_argument(
          "tlppo: target maze must be larger than the pretraining maze");
  }

  const Clock::time_point t0 = Clock::now();
  TrainResult result;

  TaskEnv env(env_spec, mix_seed(seed, kEnvStream));
  Rng action_rng(mix_seed(seed, kActionStream));

  if (agent == AgentKind::dt) {
    validate(options.dt, env.action_count());
    run_dt_loop(env, options.dt, options.episodes, action_rng, t0, result.episodes,
                result.total_env_steps);
    result.total_wall_ns = elapsed_ns(t0);
    return result;
  }

  Rng init_rng(mix_seed(seed, kInitStream));
  Rng shuffle_rng(mix_seed(seed, kShuffleStream));
  PolicyValueNet net = mlp_init(env.obs_dim(), env.action_count(), init_rng);
  AdamState adam = adam_init(net);

  if (agent == AgentKind::tlppo) {
    // Phase 1: plain PPO on the small maze, logged separately.
    const std::uint64_t pre_seed = mix_seed(seed, kPretrainStream);
    TaskEnv pre_env(EnvSpec{EnvKind::maze, options.tl_pretrain_maze_size},
                    mix_seed(pre_seed, kEnvStream));
    Rng pre_action_rng(mix_seed(pre_seed, kActionStream));
    Rng pre_shuffle_rng(mix_seed(pre_seed, kShuffleStream));
    NnPolicy pre_policy(&net);
    run_learning_loop(net, adam, pre_policy, pre_env, options.ppo,
                      options.tl_pretrain_episodes, pre_action_rng, pre_shuffle_rng, t0,
                      result.pretrain_episodes, result.total_env_steps);

    // Transfer: parameters pass through a snapshot (lossless round trip);
    // the optimizer state starts fresh on the target maze.
    std::stringstream snapshot;
    save_snapshot(net, snapshot);
    if (!options.tl_snapshot_path.empty())
      save_snapshot_file(net, options.tl_snapshot_path);
    net = load_snapshot(snapshot);
    adam = adam_init(net);
  }

  if (agent == AgentKind::ppo || agent == AgentKind::tlppo) {
    NnPolicy policy(&net);
    run_learning_loop(net, adam, policy, env, options.ppo, options.episodes, action_rng,
                      shuffle_rng, t0, result.episodes, result.total_env_steps);
  } else {
    const DtConfig dt_config = guided_dt_config(options);
    validate(dt_config, env.action_count());
    GuidedPolicy policy(&net, dt_config, options.guidance);
    run_learning_loop(net, adam, policy, env, options.ppo, options.episodes, action_rng,
                      shuffle_rng, t0, result.episodes, result.total_env_steps);
  }

  result.total_wall_ns = elapsed_ns(t0);
  return result;
}

}  // namespace dtppo
