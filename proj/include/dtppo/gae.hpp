#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "dtppo/rollout.hpp"

namespace dtppo {

struct GaeResult {
  std::vector<double> advantages;
  std::vector<double> returns;
};

// Generalized advantage estimation, computed right-to-left:
//   delta_t = r_t + gamma * (1 - done_t) * V_{t+1} - V_t
//   A_t     = delta_t + gamma * lambda * (1 - done_t) * A_{t+1}
//   ret_t   = A_t + V_t
// V_{t+1} for the last index is bootstrap_value (0 if that transition was
// terminal, the value estimate of the next observation otherwise).
GaeResult compute_gae(std::span<const double> rewards, std::span<const double> values,
                      std::span<const std::uint8_t> dones, double bootstrap_value,
                      double gamma, double lambda);

// Convenience overload: fills buffer.advantages and buffer.returns from the
// stored transitions and buffer.final_value.
void compute_gae(RolloutBuffer& buffer, double gamma, double lambda);

}  // namespace dtppo
