#pragma once

// Shared helpers for the unit tests and the acceptance gate.

#include <cmath>
#include <cstdint>
#include <queue>
#include <span>
#include <vector>

#include "dtppo/gae.hpp"
#include "dtppo/guidance.hpp"
#include "dtppo/maze.hpp"
#include "dtppo/mlp.hpp"
#include "dtppo/ppo.hpp"
#include "dtppo/rng.hpp"
#include "dtppo/rollout.hpp"

namespace dtppo::testing {

// Number of cells reachable from the entry through open passages.
inline int bfs_reachable_cells(const MazeGrid& grid) {
  const int m = grid.size();
  std::vector<char> seen(static_cast<std::size_t>(m) * m, 0);
  std::queue<MazePosition> frontier;
  frontier.push(grid.entry());
  seen[0] = 1;
  int count = 1;
  while (!frontier.empty()) {
    const MazePosition p = frontier.front();
    frontier.pop();
    for (int dir = 0; dir < kMazeActionCount; ++dir) {
      if (grid.blocked(p, dir)) continue;
      const MazePosition q{p.x + kMazeDeltas[dir][0], p.y + kMazeDeltas[dir][1]};
      char& mark = seen[static_cast<std::size_t>(q.y) * m + q.x];
      if (mark) continue;
      mark = 1;
      ++count;
      frontier.push(q);
    }
  }
  return count;
}

inline bool bfs_entry_reaches_exit(const MazeGrid& grid) {
  const int m = grid.size();
  std::vector<char> seen(static_cast<std::size_t>(m) * m, 0);
  std::queue<MazePosition> frontier;
  frontier.push(grid.entry());
  seen[0] = 1;
  while (!frontier.empty()) {
    const MazePosition p = frontier.front();
    frontier.pop();
    if (p == grid.exit()) return true;
    for (int dir = 0; dir < kMazeActionCount; ++dir) {
      if (grid.blocked(p, dir)) continue;
      const MazePosition q{p.x + kMazeDeltas[dir][0], p.y + kMazeDeltas[dir][1]};
      char& mark = seen[static_cast<std::size_t>(q.y) * m + q.x];
      if (mark) continue;
      mark = 1;
      frontier.push(q);
    }
  }
  return false;
}

// Brute-force discounted return: G_t = sum_k gamma^(k-t) r_k up to and
// including the first terminal step, or through the end of the trajectory
// plus gamma^(n-t) * bootstrap when no terminal intervenes.
inline double discounted_return_oracle(std::span<const double> rewards,
                                       std::span<const std::uint8_t> dones,
                                       double bootstrap_value, double gamma,
                                       std::size_t t) {
  double total = 0.0;
  double discount = 1.0;
  const std::size_t n = rewards.size();
  for (std::size_t k = t; k < n; ++k) {
    total += discount * rewards[k];
    if (dones[k]) return total;
    discount *= gamma;
  }
  return total + discount * bootstrap_value;
}

// Randomized parameters for gradient tests: orthogonal hidden layers plus
// dense random output layers (the default zero policy output would hide
// gradient bugs in the final layer).
inline PolicyValueNet random_net(int obs_dim, int action_count, Rng& rng) {
  PolicyValueNet net = mlp_init(obs_dim, action_count, rng);
  for (auto& ref : tensor_refs(net))
    for (double& v : *ref.data) v += 0.2 * rng.normal();
  return net;
}

// Synthetic rollout buffer for gradient checks. `guided` transitions carry a
// random DT distribution and fusion weight; log_prob is the true fused
// log-probability plus noise in [-ratio_noise, ratio_noise], which keeps
// ratios a safe distance from the clip kinks at 1 +- epsilon.
inline RolloutBuffer synthetic_buffer(const PolicyValueNet& net, int size, bool guided,
                                      double ratio_noise, Rng& rng) {
  const int obs_dim = net.obs_dim();
  const int actions = net.action_count();
  RolloutBuffer buffer;
  buffer.transitions.resize(size);
  buffer.advantages.resize(size);
  buffer.returns.resize(size);
  for (int i = 0; i < size; ++i) {
    Transition& tr = buffer.transitions[i];
    tr.observation.resize(obs_dim);
    for (double& v : tr.observation) v = rng.uniform(-1.0, 1.0);
    tr.action = rng.uniform_int(actions);
    tr.reward = rng.normal();
    tr.done = rng.next_unit() < 0.1;
    tr.value = rng.normal();

    std::vector<double> log_probs;
    if (guided) {
      std::vector<double> raw(actions);
      for (double& v : raw) v = rng.uniform(0.05, 1.0);
      double sum = 0.0;
      for (double v : raw) sum += v;
      for (double& v : raw) v /= sum;
      tr.fusion_weight = rng.uniform(0.0, 1.0);
      GuidedEval eval =
          guided_action_distribution(net, tr.observation, raw, tr.fusion_weight);
      tr.dt_logits = std::move(eval.dt_logits);
      log_probs = std::move(eval.log_probs);
    } else {
      log_probs = log_softmax(policy_logits(net, tr.observation));
    }
    tr.log_prob = log_probs[tr.action] + rng.uniform(-ratio_noise, ratio_noise);
    buffer.advantages[i] = rng.normal();
    buffer.returns[i] = rng.normal();
  }
  return buffer;
}

struct GradCheckReport {
  int checked = 0;
  int failed = 0;
  double worst_relative_error = 0.0;
};

// Central-difference check of the analytic PPO-loss gradients over sampled
// parameter entries. An entry passes when
//   |analytic - fd| <= tol * max(|analytic|, |fd|, floor)
// The floor guards near-zero partials, where the central difference itself
// carries rounding noise of order eps/h.
inline GradCheckReport gradcheck_ppo(PolicyValueNet& net, const RolloutBuffer& buffer,
                                     std::span<const int> indices,
                                     const PpoConfig& config, int samples_per_tensor,
                                     double h, double tol, double floor, Rng& rng) {
  PolicyValueGrads grads = zeros_like(net);
  zero_grads(grads);
  ppo_minibatch_grads(net, buffer, indices, config, grads);
  const auto grad_refs = tensor_refs(grads);
  auto param_refs = tensor_refs(net);

  GradCheckReport report;
  for (std::size_t t = 0; t < param_refs.size(); ++t) {
    std::vector<double>& params = *param_refs[t].data;
    const std::vector<double>& analytic = *grad_refs[t].data;
    const int total = static_cast<int>(params.size());
    const int count = std::min(samples_per_tensor, total);
    for (int s = 0; s < count; ++s) {
      const int j = (count == total) ? s : rng.uniform_int(total);
      const double saved = params[j];
      params[j] = saved + h;
      const double loss_plus = ppo_minibatch_loss(net, buffer, indices, config).total_loss;
      params[j] = saved - h;
      const double loss_minus = ppo_minibatch_loss(net, buffer, indices, config).total_loss;
      params[j] = saved;
      const double fd = (loss_plus - loss_minus) / (2.0 * h);
      const double denom = std::max({std::fabs(analytic[j]), std::fabs(fd), floor});
      const double rel = std::fabs(analytic[j] - fd) / denom;
      report.worst_relative_error = std::max(report.worst_relative_error, rel);
      ++report.checked;
      if (rel > tol) ++report.failed;
    }
  }
  return report;
}

// Ordinary least squares slope of y against x = 0..n-1.
inline double ols_slope(std::span<const double> y) {
  const double n = static_cast<double>(y.size());
  const double x_mean = (n - 1.0) / 2.0;
  double y_mean = 0.0;
  for (double v : y) y_mean += v;
  y_mean /= n;
  double cov = 0.0;
  double var = 0.0;
  for (std::size_t i = 0; i < y.size(); ++i) {
    const double dx = static_cast<double>(i) - x_mean;
    cov += dx * (y[i] - y_mean);
    var += dx * dx;
  }
  return cov / var;
}

inline double mean_of(std::span<const double> values) {
  double total = 0.0;
  for (double v : values) total += v;
  return total / static_cast<double>(values.size());
}

}  // namespace dtppo::testing
