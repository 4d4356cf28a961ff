#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "dtppo/cartpole.hpp"
#include "dtppo/dt_agent.hpp"
#include "dtppo/maze.hpp"
#include "dtppo/step_result.hpp"

namespace dtppo {

enum class EnvKind { cartpole, maze };

std::string to_string(EnvKind kind);
EnvKind env_kind_from_string(const std::string& name);

// Which environment to build. maze_size is ignored for cartpole.
struct EnvSpec {
  EnvKind kind = EnvKind::cartpole;
  int maze_size = 5;
};

// Uniform facade over the concrete environments, including the
// decision-theoretic action distribution used for guidance.
class TaskEnv {
 public:
  TaskEnv(const EnvSpec& spec, std::uint64_t seed);
  explicit TaskEnv(MazeEnv env);       // wrap a prebuilt maze (tests, transfer)
  explicit TaskEnv(CartPoleEnv env);

  std::vector<double> reset();
  StepResult step(int action);

  int action_count() const;
  int obs_dim() const;
  bool done() const;
  int steps_taken() const;
  EnvKind kind() const;

  // DT action distribution for the *current* state.
  ActionDistribution dt_distribution(const DtConfig& config) const;

  const CartPoleEnv& cartpole() const;
  const MazeEnv& maze() const;

 private:
  std::variant<CartPoleEnv, MazeEnv> env_;
};

}  // namespace dtppo
