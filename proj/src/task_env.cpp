#include "dtppo/task_env.hpp"

#include <utility>

namespace dtppo {

std::string to_string(EnvKind kind) {
  switch (kind) {
    case EnvKind::cartpole: return "cartpole";
    case EnvKind::maze: return "maze";
  }
  throw std::logic_error("to_string(EnvKind): invalid value");
}

EnvKind env_kind_from_string(const std::string& name) {
  if (name == "cartpole") return EnvKind::cartpole;
  if (name == "maze") return EnvKind::maze;
  throw std::invalid_argument("unknown environment: " + name);
}

TaskEnv::TaskEnv(const EnvSpec& spec, std::uint64_t seed)
    : env_(spec.kind == EnvKind::cartpole
               ? std::variant<CartPoleEnv, MazeEnv>(std::in_place_type<CartPoleEnv>, seed)
               : std::variant<CartPoleEnv, MazeEnv>(std::in_place_type<MazeEnv>,
                                                    spec.maze_size, seed)) {}

TaskEnv::TaskEnv(MazeEnv env) : env_(std::move(env)) {}
TaskEnv::TaskEnv(CartPoleEnv env) : env_(std::move(env)) {}

std::vector<double> TaskEnv::reset() {
  return std::visit([](auto& e) { return e.reset(); }, env_);
}

StepResult TaskEnv::step(int action) {
  return std::visit([action](auto& e) { return e.step(action); }, env_);
}

int TaskEnv::action_count() const {
  return std::visit([](const auto& e) { return e.action_count(); }, env_);
}

int TaskEnv::obs_dim() const {
  return std::visit([](const auto& e) { return e.obs_dim(); }, env_);
}

bool TaskEnv::done() const {
  return std::visit([](const auto& e) { return e.done(); }, env_);
}

int TaskEnv::steps_taken() const {
  return std::visit([](const auto& e) { return e.steps_taken(); }, env_);
}

EnvKind TaskEnv::kind() const {
  return std::holds_alternative<CartPoleEnv>(env_) ? EnvKind::cartpole : EnvKind::maze;
}

ActionDistribution TaskEnv::dt_distribution(const DtConfig& config) const {
  if (const auto* cp = std::get_if<CartPoleEnv>(&env_)) {
    return cartpole_dt_distribution(cp->state().theta, config);
  }
  const auto& mz = std::get<MazeEnv>(env_);
  return maze_dt_distribution(mz.grid(), mz.position(), config);
}

const CartPoleEnv& TaskEnv::cartpole() const {
  if (const auto* cp = std::get_if<CartPoleEnv>(&env_)) return *cp;
  throw std::logic_error("TaskEnv::cartpole: env is not a cart pole");
}

const MazeEnv& TaskEnv::maze() const {
  if (const auto* mz = std::get_if<MazeEnv>(&env_)) return *mz;
  throw std::logic_error("TaskEnv::maze: env is not a maze");
}

}  // namespace dtppo
