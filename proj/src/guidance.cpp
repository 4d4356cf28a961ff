#include "dtppo/guidance.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "dtppo/dt_agent.hpp"

namespace dtppo {

void validate(const GuidanceConfig& config) {
  if (!(config.dt_temperature > 0.0) || !std::isfinite(config.dt_temperature))
    throw std::invalid_argument("GuidanceConfig: dt_temperature must be positive");
  if (!(std::isfinite(config.initial_weight) && std::isfinite(config.final_weight)))
    throw std::invalid_argument("GuidanceConfig: weights must be finite");
  if (!(config.initial_weight >= config.final_weight && config.final_weight >= 0.0))
    throw std::invalid_argument(
        "GuidanceConfig: requires initial_weight >= final_weight >= 0");
  if (config.decay_steps < 1)
    throw std::invalid_argument("GuidanceConfig: decay_steps must be >= 1");
}

double guidance_weight(std::int64_t env_steps, const GuidanceConfig& config) {
  if (env_steps < 0) throw std::invalid_argument("guidance_weight: negative step count");
  const double slope = (config.initial_weight - config.final_weight) /
                       static_cast<double>(config.decay_steps);
  return std::max(config.final_weight,
                  config.initial_weight - static_cast<double>(env_steps) * slope);
}

std::vector<double> fuse_logits(std::span<const double> nn_logits,
                                std::span<const double> dt_logits, double weight) {
  if (nn_logits.size() != dt_logits.size())
    throw std::invalid_argument("fuse_logits: logit vectors differ in length");
  std::vector<double> combined(nn_logits.size());
  for (std::size_t i = 0; i < combined.size(); ++i)
    combined[i] = nn_logits[i] + weight * dt_logits[i];
  return combined;
}

std::vector<double> log_softmax(std::span<const double> logits) {
  if (logits.empty()) throw std::invalid_argument("log_softmax: empty input");
  const double m = *std::max_element(logits.begin(), logits.end());
  double sum = 0.0;
  for (double v : logits) sum += std::exp(v - m);
  const double log_sum = std::log(sum);
  std::vector<double> out(logits.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = (logits[i] - m) - log_sum;
  return out;
}

std::vector<double> probs_from_log(std::span<const double> log_probs) {
  std::vector<double> out(log_probs.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = std::exp(log_probs[i]);
  return out;
}

GuidedEval guided_action_distribution(const PolicyValueNet& net,
                                      std::span<const double> obs,
                                      std::span<const double> dt_probs, double weight) {
  GuidedEval eval;
  const std::vector<double> nn_logits = policy_logits(net, obs);
  const ActionDistribution dt_vec(dt_probs.begin(), dt_probs.end());
  eval.dt_logits = reverse_softmax(dt_vec);
  const std::vector<double> combined = fuse_logits(nn_logits, eval.dt_logits, weight);
  eval.log_probs = log_softmax(combined);
  eval.probs = probs_from_log(eval.log_probs);
  eval.value = value_estimate(net, obs);
  return eval;
}

}  // namespace dtppo
