#include "dtppo/gae.hpp"

#include <stdexcept>

namespace dtppo {

GaeResult compute_gae(std::span<const double> rewards, std::span<const double> values,
                      std::span<const std::uint8_t> dones, double bootstrap_value,
                      double gamma, double lambda) {
  const std::size_t n = rewards.size();
  if (values.size() != n || dones.size() != n)
    throw std::invalid_argument("compute_gae: input vectors differ in length");

  GaeResult result;
  result.advantages.resize(n);
  result.returns.resize(n);
  double running = 0.0;
  for (std::size_t i = n; i-- > 0;) {
    const double not_done = dones[i] ? 0.0 : 1.0;
    const double next_value = (i + 1 == n) ? bootstrap_value : values[i + 1];
    const double delta = rewards[i] + gamma * not_done * next_value - values[i];
    running = delta + gamma * lambda * not_done * running;
    result.advantages[i] = running;
    result.returns[i] = running + values[i];
  }
  return result;
}

void compute_gae(RolloutBuffer& buffer, double gamma, double lambda) {
  const std::size_t n = buffer.transitions.size();
  std::vector<double> rewards(n), values(n);
  std::vector<std::uint8_t> dones(n);
  for (std::size_t i = 0; i < n; ++i) {
    rewards[i] = buffer.transitions[i].reward;
    values[i] = buffer.transitions[i].value;
    dones[i] = buffer.transitions[i].done ? 1 : 0;
  }
  GaeResult result =
      compute_gae(rewards, values, dones, buffer.final_value, gamma, lambda);
  buffer.advantages = std::move(result.advantages);
  buffer.returns = std::move(result.returns);
}

}  // namespace dtppo
