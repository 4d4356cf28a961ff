#include "dtppo/adam.hpp"

#include <cmath>
#include <stdexcept>

namespace dtppo {

AdamState adam_init(const PolicyValueNet& net) {
  AdamState state;
  state.m = zeros_like(net);
  state.v = zeros_like(net);
  state.step = 0;
  return state;
}

void adam_step(PolicyValueNet& net, const PolicyValueGrads& grads, AdamState& state,
               double lr) {
  auto params = tensor_refs(net);
  const auto g_refs = tensor_refs(grads);
  auto m_refs = tensor_refs(state.m);
  auto v_refs = tensor_refs(state.v);
  if (params.size() != g_refs.size()) throw std::invalid_argument("adam_step: layout mismatch");

  ++state.step;
  const double bc1 = 1.0 - std::pow(state.beta1, static_cast<double>(state.step));
  const double bc2 = 1.0 - std::pow(state.beta2, static_cast<double>(state.step));

  for (std::size_t t = 0; t < params.size(); ++t) {
    auto& p = *params[t].data;
    const auto& g = *g_refs[t].data;
    auto& m = *m_refs[t].data;
    auto& v = *v_refs[t].data;
    if (p.size() != g.size() || p.size() != m.size() || p.size() != v.size())
      throw std::invalid_argument("adam_step: tensor size mismatch in " + params[t].name);
    for (std::size_t i = 0; i < p.size(); ++i) {
      m[i] = state.beta1 * m[i] + (1.0 - state.beta1) * g[i];
      v[i] = state.beta2 * v[i] + (1.0 - state.beta2) * g[i] * g[i];
      const double m_hat = m[i] / bc1;
      const double v_hat = v[i] / bc2;
      p[i] -= lr * m_hat / (std::sqrt(v_hat) + state.epsilon);
    }
  }
}

}  // namespace dtppo
