#pragma once

#include <span>

#include "dtppo/adam.hpp"
#include "dtppo/mlp.hpp"
#include "dtppo/rng.hpp"
#include "dtppo/rollout.hpp"

namespace dtppo {

struct PpoConfig {
  double gamma = 0.99;
  double learning_rate = 0.0003;
  int rollout_size = 2048;
  int minibatch_size = 64;
  double clip_epsilon = 0.2;
  double gae_lambda = 0.95;
  int update_epochs = 10;
  double value_coef = 0.5;
  double entropy_coef = 0.0;
  double max_grad_norm = 0.5;
};

void validate(const PpoConfig& config);

struct MinibatchStats {
  double policy_loss = 0.0;
  double value_loss = 0.0;
  double entropy = 0.0;
  double total_loss = 0.0;
};

// The advantage normalization applied inside every minibatch loss:
// (A - mean) / max(sample_std, 1e-8).
std::vector<double> normalized_advantages(const RolloutBuffer& buffer,
                                          std::span<const int> indices);

// Clipped-surrogate PPO loss over buffer.transitions[indices]:
//   ratio  = exp(log pi_new - log pi_old)
//   policy = -mean(min(ratio * A, clip(ratio, 1-eps, 1+eps) * A))
//   value  = mean((V_new - return)^2)
//   total  = policy + value_coef * value - entropy_coef * entropy
// Advantages are normalized to mean 0 / std 1 within the minibatch (sample
// std, divisor floored at 1e-8). For guided transitions, log pi_new comes
// from the fused distribution using each transition's snapshotted fusion
// weight and DT logits; no gradient flows into the DT term.
MinibatchStats ppo_minibatch_loss(const PolicyValueNet& net, const RolloutBuffer& buffer,
                                  std::span<const int> indices, const PpoConfig& config);

// Same loss, and accumulates the analytic parameter gradients into `grads`
// (caller zeroes beforehand).
MinibatchStats ppo_minibatch_grads(const PolicyValueNet& net, const RolloutBuffer& buffer,
                                   std::span<const int> indices, const PpoConfig& config,
                                   PolicyValueGrads& grads);

struct UpdateStats {
  double mean_policy_loss = 0.0;
  double mean_value_loss = 0.0;
  double mean_entropy = 0.0;
  double mean_total_loss = 0.0;
  double max_grad_norm_seen = 0.0;  // pre-clip global norms
  int optimizer_steps = 0;
};

// One full PPO update: update_epochs passes over the buffer, shuffling
// indices each epoch and applying one clipped-gradient Adam step per
// minibatch. Requires buffer.advantages/returns to be computed already.
UpdateStats ppo_update(PolicyValueNet& net, const RolloutBuffer& buffer,
                       const PpoConfig& config, AdamState& adam, Rng& shuffle_rng);

}  // namespace dtppo
