#pragma once

#include <functional>
#include <span>
#include <vector>

#include "dtppo/dt_agent.hpp"
#include "dtppo/guidance.hpp"
#include "dtppo/mlp.hpp"
#include "dtppo/rng.hpp"
#include "dtppo/task_env.hpp"

namespace dtppo {

// One on-policy transition. log_prob and value are recorded at collection
// time. For guided policies, fusion_weight and dt_logits snapshot exactly the
// inputs used to compute log_prob, so update-time recomputation of the new
// log-probabilities sees the same fused distribution family.
struct Transition {
  std::vector<double> observation;
  int action = 0;
  double reward = 0.0;
  bool done = false;
  double log_prob = 0.0;
  double value = 0.0;
  double fusion_weight = 0.0;
  std::vector<double> dt_logits;  // empty when the policy is unguided
};

struct RolloutBuffer {
  std::vector<Transition> transitions;
  std::vector<double> advantages;
  std::vector<double> returns;
  // Value estimate of the observation following the last transition;
  // exactly 0 when that transition ended its episode.
  double final_value = 0.0;
};

struct ActResult {
  int action = 0;
  double log_prob = 0.0;
  double value = 0.0;
  double fusion_weight = 0.0;
  std::vector<double> dt_logits;
};

// Action-distribution source consumed by collect_rollout.
class ActingPolicy {
 public:
  virtual ~ActingPolicy() = default;
  // Sample an action for the current observation. `env` provides the raw
  // environment state needed by utility-based policies (walls are not
  // recoverable from the normalized observation).
  virtual ActResult act(const TaskEnv& env, std::span<const double> obs, Rng& rng) = 0;
  // Value estimate used for the rollout-end bootstrap.
  virtual double state_value(std::span<const double> obs) = 0;
  // Invoked once after every environment step (drives weight schedules).
  virtual void on_env_step() {}
};

// Plain softmax policy over the network's logits.
class NnPolicy final : public ActingPolicy {
 public:
  explicit NnPolicy(const PolicyValueNet* net);
  ActResult act(const TaskEnv& env, std::span<const double> obs, Rng& rng) override;
  double state_value(std::span<const double> obs) override;

 private:
  const PolicyValueNet* net_;
};

// DT-guided policy: fuses the network logits with reverse-softmax DT logits
// under the decaying weight, then samples from the temperature-1 softmax.
class GuidedPolicy final : public ActingPolicy {
 public:
  GuidedPolicy(const PolicyValueNet* net, const DtConfig& dt,
               const GuidanceConfig& guidance);
  ActResult act(const TaskEnv& env, std::span<const double> obs, Rng& rng) override;
  double state_value(std::span<const double> obs) override;
  void on_env_step() override { state_.advance(); }

  double current_weight() const { return state_.weight(guidance_); }
  const GuidanceState& guidance_state() const { return state_; }

 private:
  const PolicyValueNet* net_;
  DtConfig dt_;
  GuidanceConfig guidance_;
  GuidanceState state_;
};

// Acting-loop state that persists across rollouts (episodes span buffer
// boundaries).
struct ActorState {
  std::vector<double> obs;
  double episode_reward = 0.0;
  int episode_steps = 0;
};

using EpisodeCallback = std::function<void(double accumulated_reward, int steps)>;

// Fills `buffer` with exactly `capacity` fresh transitions, resetting the
// environment whenever an episode finishes and invoking `on_episode_end` for
// each completed episode. Sets buffer.final_value (0 if the last transition
// was terminal, V(next observation) otherwise). Returns the number of
// episodes completed during this call.
int collect_rollout(ActingPolicy& policy, TaskEnv& env, ActorState& actor, int capacity,
                    Rng& action_rng, RolloutBuffer& buffer,
                    const EpisodeCallback& on_episode_end = {});

}  // namespace dtppo
