#ifndef DTPPO_DT_AGENT_HPP
#define DTPPO_DT_AGENT_HPP

#include <span>
#include <vector>

#include "dtppo/maze.hpp"
#include "dtppo/rng.hpp"

namespace dtppo {

// One utility per action, in the fixed action index order of the environment.
using UtilityVector = std::vector<double>;

// Strictly positive probabilities summing to 1.
using ActionDistribution = std::vector<double>;

struct DtConfig {
  double temperature = 0.1;
  double min_prob_clamp = 1e-12;
  double distance_floor = 0.5;
};

void validate(const DtConfig& config, int action_count);

// Cart pole: push away from the tilt. Utilities are the pole angle normalized
// by the 0.209 rad termination threshold, signed per action [left, right].
UtilityVector cartpole_utilities(double theta);

// Maze: inverse Euclidean distance from the would-be next cell to the exit;
// blocked directions score 0. The distance is floored so the exit cell itself
// keeps a finite, dominant utility.
UtilityVector maze_utilities(const MazeGrid& grid, MazePosition pos, const DtConfig& config);

// Softmax of u/temperature with max-subtraction; entries are clamped below at
// min_prob_clamp and renormalized so the log of every entry stays bounded.
ActionDistribution tempered_softmax(const UtilityVector& u, double temperature,
                                    double min_prob_clamp = 1e-12);

// Elementwise natural log; recovers logits equal to the original scores up to
// one additive constant shared by all entries.
std::vector<double> reverse_softmax(const ActionDistribution& p);

int dt_select_action(const ActionDistribution& p, Rng& rng);

ActionDistribution cartpole_dt_distribution(double theta, const DtConfig& config);
ActionDistribution maze_dt_distribution(const MazeGrid& grid, MazePosition pos,
                                        const DtConfig& config);

}  // namespace dtppo

#endif  // DTPPO_DT_AGENT_HPP
