#include "dtppo/rollout.hpp"

#include <stdexcept>
#include <utility>

namespace dtppo {

NnPolicy::NnPolicy(const PolicyValueNet* net) : net_(net) {
  if (net == nullptr) throw std::invalid_argument("NnPolicy: null network");
}

ActResult NnPolicy::act(const TaskEnv& /*env*/, std::span<const double> obs, Rng& rng) {
  const std::vector<double> logits = policy_logits(*net_, obs);
  const std::vector<double> log_probs = log_softmax(logits);
  const std::vector<double> probs = probs_from_log(log_probs);
  ActResult result;
  result.action = rng.categorical(probs);
  result.log_prob = log_probs[result.action];
  result.value = value_estimate(*net_, obs);
  return result;
}

double NnPolicy::state_value(std::span<const double> obs) {
  return value_estimate(*net_, obs);
}

GuidedPolicy::GuidedPolicy(const PolicyValueNet* net, const DtConfig& dt,
                           const GuidanceConfig& guidance)
    : net_(net), dt_(dt), guidance_(guidance) {
  if (net == nullptr) throw std::invalid_argument("GuidedPolicy: null network");
  validate(guidance_);
}

ActResult GuidedPolicy::act(const TaskEnv& env, std::span<const double> obs, Rng& rng) {
  const ActionDistribution dt_probs = env.dt_distribution(dt_);
  const double weight = state_.weight(guidance_);
  GuidedEval eval = guided_action_distribution(*net_, obs, dt_probs, weight);
  ActResult result;
  result.action = rng.categorical(eval.probs);
  result.log_prob = eval.log_probs[result.action];
  result.value = eval.value;
  result.fusion_weight = weight;
  result.dt_logits = std::move(eval.dt_logits);
  return result;
}

double GuidedPolicy::state_value(std::span<const double> obs) {
  return value_estimate(*net_, obs);
}

int collect_rollout(ActingPolicy& policy, TaskEnv& env, ActorState& actor, int capacity,
                    Rng& action_rng, RolloutBuffer& buffer,
                    const EpisodeCallback& on_episode_end) {
  if (capacity < 1) throw std::invalid_argument("collect_rollout: capacity must be >= 1");
  if (actor.obs.empty()) {
    actor.obs = env.reset();
    actor.episode_reward = 0.0;
    actor.episode_steps = 0;
  }

  buffer.transitions.clear();
  buffer.transitions.reserve(static_cast<std::size_t>(capacity));
  buffer.advantages.clear();
  buffer.returns.clear();
  buffer.final_value = 0.0;

  int episodes_completed = 0;
  for (int i = 0; i < capacity; ++i) {
    ActResult chosen = policy.act(env, actor.obs, action_rng);
    const StepResult step = env.step(chosen.action);
    policy.on_env_step();

    Transition tr;
    tr.observation = actor.obs;
    tr.action = chosen.action;
    tr.reward = step.reward;
    tr.done = step.done;
    tr.log_prob = chosen.log_prob;
    tr.value = chosen.value;
    tr.fusion_weight = chosen.fusion_weight;
    tr.dt_logits = std::move(chosen.dt_logits);
    buffer.transitions.push_back(std::move(tr));

    actor.episode_reward += step.reward;
    actor.episode_steps += 1;
    if (step.done) {
      if (on_episode_end) on_episode_end(actor.episode_reward, actor.episode_steps);
      ++episodes_completed;
      actor.episode_reward = 0.0;
      actor.episode_steps = 0;
      actor.obs = env.reset();
    } else {
      actor.obs = step.observation;
    }
  }

  buffer.final_value =
      buffer.transitions.back().done ? 0.0 : policy.state_value(actor.obs);
  return episodes_completed;
}

}  // namespace dtppo
