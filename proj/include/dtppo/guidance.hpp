#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "dtppo/mlp.hpp"

namespace dtppo {

// Linear decay schedule for the DT guidance weight. The weight starts at
// initial_weight and decreases linearly to final_weight over decay_steps
// environment steps, then stays at final_weight. dt_temperature is the
// softmax temperature of the DT distribution consumed by the guided pipeline.
struct GuidanceConfig {
  double dt_temperature = 0.1;
  double initial_weight = 1.0;
  double final_weight = 0.0;
  std::int64_t decay_steps = 20480;
};

void validate(const GuidanceConfig& config);

// Weight after `env_steps` environment steps have elapsed (0 => initial_weight):
// w = max(final, initial - steps * (initial - final) / decay_steps).
double guidance_weight(std::int64_t env_steps, const GuidanceConfig& config);

// Counter advanced once per environment step by the acting loop.
struct GuidanceState {
  std::int64_t env_step_counter = 0;
  void advance() { ++env_step_counter; }
  double weight(const GuidanceConfig& config) const {
    return guidance_weight(env_step_counter, config);
  }
};

// combined_i = nn_logits_i + weight * dt_logits_i
std::vector<double> fuse_logits(std::span<const double> nn_logits,
                                std::span<const double> dt_logits, double weight);

// Numerically stable log softmax (max-subtracted).
std::vector<double> log_softmax(std::span<const double> logits);

// exp() of each entry; input must be log-probabilities.
std::vector<double> probs_from_log(std::span<const double> log_probs);

// Full evaluation of the guided policy head for one observation: policy-net
// logits fused with log(dt_probs) at the given weight, final softmax at
// temperature 1, plus the value-head output. Pure: no step counter side
// effects, and no gradients flow into dt_probs (it is data, not parameters).
struct GuidedEval {
  std::vector<double> probs;
  std::vector<double> log_probs;
  std::vector<double> dt_logits;
  double value = 0.0;
};

GuidedEval guided_action_distribution(const PolicyValueNet& net,
                                      std::span<const double> obs,
                                      std::span<const double> dt_probs, double weight);

}  // namespace dtppo
