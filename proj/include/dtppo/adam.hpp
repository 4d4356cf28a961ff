#pragma once

#include <cstdint>

#include "dtppo/mlp.hpp"

namespace dtppo {

// Adam optimizer state for a PolicyValueNet. `m` and `v` mirror the parameter
// layout; `step` is the shared bias-correction counter, incremented once per
// adam_step call (i.e. per minibatch).
struct AdamState {
  PolicyValueGrads m;
  PolicyValueGrads v;
  std::int64_t step = 0;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double epsilon = 1e-8;
};

AdamState adam_init(const PolicyValueNet& net);

// One bias-corrected Adam update of `net` from `grads` with learning rate `lr`.
void adam_step(PolicyValueNet& net, const PolicyValueGrads& grads, AdamState& state,
               double lr);

}  // namespace dtppo
