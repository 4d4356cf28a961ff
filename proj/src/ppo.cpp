#include "dtppo/ppo.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "dtppo/guidance.hpp"

namespace dtppo {

namespace {

constexpr double kAdvantageStdFloor = 1e-8;

struct BatchNorm {
  double mean = 0.0;
  double denom = 1.0;
};

BatchNorm advantage_normalizer(const RolloutBuffer& buffer, std::span<const int> indices) {
  BatchNorm norm;
  const std::size_t n = indices.size();
  for (int idx : indices) norm.mean += buffer.advantages[idx];
  norm.mean /= static_cast<double>(n);
  double var = 0.0;
  if (n > 1) {
    for (int idx : indices) {
      const double d = buffer.advantages[idx] - norm.mean;
      var += d * d;
    }
    var /= static_cast<double>(n - 1);
  }
  norm.denom = std::max(std::sqrt(var), kAdvantageStdFloor);
  return norm;
}

// Shared implementation; `grads == nullptr` computes the loss only.
MinibatchStats ppo_minibatch_impl(const PolicyValueNet& net, const RolloutBuffer& buffer,
                                  std::span<const int> indices, const PpoConfig& config,
                                  PolicyValueGrads* grads) {
  if (indices.empty()) throw std::invalid_argument("ppo minibatch: empty index set");
  if (buffer.advantages.size() != buffer.transitions.size() ||
      buffer.returns.size() != buffer.transitions.size())
    throw std::logic_error("ppo minibatch: advantages/returns not computed");
  for (int idx : indices)
    if (idx < 0 || static_cast<std::size_t>(idx) >= buffer.transitions.size())
      throw std::out_of_range("ppo minibatch: index outside buffer");

  const BatchNorm norm = advantage_normalizer(buffer, indices);
  const double n = static_cast<double>(indices.size());
  const double lo = 1.0 - config.clip_epsilon;
  const double hi = 1.0 + config.clip_epsilon;

  MinibatchStats stats;
  MlpWorkspace policy_ws;
  MlpWorkspace value_ws;
  std::vector<double> combined;
  std::vector<double> d_logits;

  for (int idx : indices) {
    const Transition& tr = buffer.transitions[idx];

    mlp_forward(net.policy, tr.observation, policy_ws);
    if (tr.dt_logits.empty()) {
      combined.assign(policy_ws.out.begin(), policy_ws.out.end());
    } else {
      combined = fuse_logits(policy_ws.out, tr.dt_logits, tr.fusion_weight);
    }
    const std::vector<double> log_probs = log_softmax(combined);
    const std::vector<double> probs = probs_from_log(log_probs);

    const double log_prob_new = log_probs[tr.action];
    const double ratio = std::exp(log_prob_new - tr.log_prob);
    const double advantage = (buffer.advantages[idx] - norm.mean) / norm.denom;
    const double surr1 = ratio * advantage;
    const double surr2 = std::clamp(ratio, lo, hi) * advantage;
    stats.policy_loss -= std::min(surr1, surr2) / n;

    double entropy = 0.0;
    for (std::size_t k = 0; k < probs.size(); ++k) entropy -= probs[k] * log_probs[k];
    stats.entropy += entropy / n;

    mlp_forward(net.value, tr.observation, value_ws);
    const double value = value_ws.out[0];
    const double value_err = value - buffer.returns[idx];
    stats.value_loss += value_err * value_err / n;

    if (grads != nullptr) {
      // d total / d log_prob_new: the min() selects the unclipped surrogate
      // when surr1 <= surr2; otherwise the clamp is saturated and the policy
      // gradient of this sample is exactly 0.
      const double d_log_prob = (surr1 <= surr2) ? -(ratio * advantage) / n : 0.0;
      d_logits.assign(combined.size(), 0.0);
      for (std::size_t k = 0; k < combined.size(); ++k) {
        const double onehot = (static_cast<int>(k) == tr.action) ? 1.0 : 0.0;
        d_logits[k] = d_log_prob * (onehot - probs[k]);
      }
      if (config.entropy_coef != 0.0) {
        // d(-coef * mean entropy) / d z_k = (coef / n) * p_k * (log p_k + H)
        for (std::size_t k = 0; k < combined.size(); ++k)
          d_logits[k] += (config.entropy_coef / n) * probs[k] * (log_probs[k] + entropy);
      }
      // Fused logits are nn_logits + w * dt_logits with dt_logits constant,
      // so d combined / d nn_logits is the identity.
      mlp_backward(net.policy, policy_ws, d_logits, grads->policy);

      const double d_value = config.value_coef * 2.0 * value_err / n;
      mlp_backward(net.value, value_ws, std::span<const double>(&d_value, 1),
                   grads->value);
    }
  }

  stats.total_loss = stats.policy_loss + config.value_coef * stats.value_loss -
                     config.entropy_coef * stats.entropy;
  if (!std::isfinite(stats.total_loss)) {
    std::ostringstream msg;
    msg << "ppo minibatch: non-finite loss (policy=" << stats.policy_loss
        << ", value=" << stats.value_loss << ", entropy=" << stats.entropy << ")";
    throw std::runtime_error(msg.str());
  }
  return stats;
}

}  // namespace

void validate(const PpoConfig& config) {
  if (!(config.gamma > 0.0 && config.gamma <= 1.0))
    throw std::invalid_argument("PpoConfig: requires 0 < gamma <= 1");
  if (!(config.clip_epsilon > 0.0 && config.clip_epsilon < 1.0))
    throw std::invalid_argument("PpoConfig: requires 0 < clip_epsilon < 1");
  if (config.rollout_size < 1 || config.minibatch_size < 1)
    throw std::invalid_argument("PpoConfig: rollout and minibatch sizes must be >= 1");
  if (config.rollout_size % config.minibatch_size != 0)
    throw std::invalid_argument(
        "PpoConfig: rollout_size must be divisible by minibatch_size");
  if (!(config.gae_lambda >= 0.0 && config.gae_lambda <= 1.0))
    throw std::invalid_argument("PpoConfig: requires 0 <= gae_lambda <= 1");
  if (config.update_epochs < 1)
    throw std::invalid_argument("PpoConfig: update_epochs must be >= 1");
  if (!(config.learning_rate > 0.0))
    throw std::invalid_argument("PpoConfig: learning_rate must be positive");
  if (!(config.value_coef >= 0.0) || !(config.entropy_coef >= 0.0))
    throw std::invalid_argument("PpoConfig: loss coefficients must be >= 0");
  if (!(config.max_grad_norm > 0.0))
    throw std::invalid_argument("PpoConfig: max_grad_norm must be positive");
}

std::vector<double> normalized_advantages(const RolloutBuffer& buffer,
                                          std::span<const int> indices) {
  if (indices.empty())
    throw std::invalid_argument("normalized_advantages: empty index set");
  const BatchNorm norm = advantage_normalizer(buffer, indices);
  std::vector<double> out;
  out.reserve(indices.size());
  for (int idx : indices)
    out.push_back((buffer.advantages[idx] - norm.mean) / norm.denom);
  return out;
}

MinibatchStats ppo_minibatch_loss(const PolicyValueNet& net, const RolloutBuffer& buffer,
                                  std::span<const int> indices, const PpoConfig& config) {
  return ppo_minibatch_impl(net, buffer, indices, config, nullptr);
}

MinibatchStats ppo_minibatch_grads(const PolicyValueNet& net, const RolloutBuffer& buffer,
                                   std::span<const int> indices, const PpoConfig& config,
                                   PolicyValueGrads& grads) {
  return ppo_minibatch_impl(net, buffer, indices, config, &grads);
}

UpdateStats ppo_update(PolicyValueNet& net, const RolloutBuffer& buffer,
                       const PpoConfig& config, AdamState& adam, Rng& shuffle_rng) {
  validate(config);
  const int n = static_cast<int>(buffer.transitions.size());
  if (n == 0) throw std::logic_error("ppo_update: empty buffer");
  if (buffer.advantages.size() != buffer.transitions.size() ||
      buffer.returns.size() != buffer.transitions.size())
    throw std::logic_error("ppo_update: advantages/returns not computed");

  std::vector<int> indices(n);
  std::iota(indices.begin(), indices.end(), 0);
  PolicyValueGrads grads = zeros_like(net);

  UpdateStats stats;
  for (int epoch = 0; epoch < config.update_epochs; ++epoch) {
    shuffle_rng.shuffle(std::span<int>(indices));
    for (int start = 0; start < n; start += config.minibatch_size) {
      const int count = std::min(config.minibatch_size, n - start);
      const std::span<const int> batch(indices.data() + start,
                                       static_cast<std::size_t>(count));
      zero_grads(grads);
      const MinibatchStats mb = ppo_minibatch_grads(net, buffer, batch, config, grads);
      const double pre_clip_norm = clip_grad_norm(grads, config.max_grad_norm);
      adam_step(net, grads, adam, config.learning_rate);

      stats.mean_policy_loss += mb.policy_loss;
      stats.mean_value_loss += mb.value_loss;
      stats.mean_entropy += mb.entropy;
      stats.mean_total_loss += mb.total_loss;
      stats.max_grad_norm_seen = std::max(stats.max_grad_norm_seen, pre_clip_norm);
      ++stats.optimizer_steps;
    }
  }

  const double steps = static_cast<double>(stats.optimizer_steps);
  stats.mean_policy_loss /= steps;
  stats.mean_value_loss /= steps;
  stats.mean_entropy /= steps;
  stats.mean_total_loss /= steps;
  return stats;
}

}  // namespace dtppo
