#include "dtppo/dt_agent.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace dtppo {

namespace {
constexpr double kCartPoleAngleScale = 0.209;
}

void validate(const DtConfig& config, int action_count) {
  if (!(config.temperature > 0.0))
    throw std::invalid_argument("DtConfig: temperature must be positive");
  if (!(config.min_prob_clamp > 0.0) || !(config.min_prob_clamp < 1.0 / action_count))
    throw std::invalid_argument("DtConfig: min_prob_clamp must lie in (0, 1/action_count)");
  if (!(config.distance_floor > 0.0))
    throw std::invalid_argument("DtConfig: distance_floor must be positive");
}

UtilityVector cartpole_utilities(double theta) {
  if (!std::isfinite(theta)) throw std::invalid_argument("cartpole_utilities: non-finite angle");
  const double scaled = theta / kCartPoleAngleScale;
  return {-scaled, scaled};
}

UtilityVector maze_utilities(const MazeGrid& grid, MazePosition pos, const DtConfig& config) {
  const MazePosition exit = grid.exit();
  UtilityVector u(kMazeActionCount, 0.0);
  for (int a = 0; a < kMazeActionCount; ++a) {
    if (grid.blocked(pos, a)) continue;
    const double dx = pos.x + kMazeDeltas[a][0] - exit.x;
    const double dy = pos.y + kMazeDeltas[a][1] - exit.y;
    const double dis = std::sqrt(dx * dx + dy * dy);
    u[a] = 1.0 / std::max(dis, config.distance_floor);
  }
  return u;
}

ActionDistribution tempered_softmax(const UtilityVector& u, double temperature,
                                    double min_prob_clamp) {
  if (u.empty()) throw std::invalid_argument("tempered_softmax: empty utility vector");
  if (!(temperature > 0.0))
    throw std::invalid_argument("tempered_softmax: temperature must be positive");

  ActionDistribution p(u.size());
  double max_logit = u[0] / temperature;
  for (double v : u) max_logit = std::max(max_logit, v / temperature);

  double sum = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    p[i] = std::exp(u[i] / temperature - max_logit);
    sum += p[i];
  }
  double clamped_sum = 0.0;
  for (double& v : p) {
    v = std::max(v / sum, min_prob_clamp);
    clamped_sum += v;
  }
  for (double& v : p) v /= clamped_sum;
  return p;
}

std::vector<double> reverse_softmax(const ActionDistribution& p) {
  std::vector<double> logits(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (!(p[i] > 0.0))
      throw std::invalid_argument("reverse_softmax: probabilities must be positive");
    logits[i] = std::log(p[i]);
  }
  return logits;
}

int dt_select_action(const ActionDistribution& p, Rng& rng) {
  return rng.categorical(p);
}

ActionDistribution cartpole_dt_distribution(double theta, const DtConfig& config) {
  return tempered_softmax(cartpole_utilities(theta), config.temperature, config.min_prob_clamp);
}

ActionDistribution maze_dt_distribution(const MazeGrid& grid, MazePosition pos,
                                        const DtConfig& config) {
  return tempered_softmax(maze_utilities(grid, pos, config), config.temperature,
                          config.min_prob_clamp);
}

}  // namespace dtppo
