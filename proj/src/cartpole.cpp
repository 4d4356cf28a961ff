#include "dtppo/cartpole.hpp"

#include <cmath>
#include <stdexcept>

namespace dtppo {

CartPoleState cartpole_physics_step(const CartPoleState& s, double force,
                                    const CartPoleParams& p) {
  const double total_mass = p.mass_cart + p.mass_pole;
  const double polemass_length = p.mass_pole * p.half_length;
  const double cos_t = std::cos(s.theta);
  const double sin_t = std::sin(s.theta);

  const double temp =
      (force + polemass_length * s.theta_dot * s.theta_dot * sin_t) / total_mass;
  const double theta_acc =
      (p.gravity * sin_t - cos_t * temp) /
      (p.half_length * (4.0 / 3.0 - p.mass_pole * cos_t * cos_t / total_mass));
  const double x_acc = temp - polemass_length * theta_acc * cos_t / total_mass;

  CartPoleState next;
  next.x = s.x + p.tau * s.x_dot;
  next.x_dot = s.x_dot + p.tau * x_acc;
  next.theta = s.theta + p.tau * s.theta_dot;
  next.theta_dot = s.theta_dot + p.tau * theta_acc;
  return next;
}

bool cartpole_state_live(const CartPoleState& s, const CartPoleParams& p) {
  return std::abs(s.x) <= p.position_limit && std::abs(s.theta) <= p.angle_limit;
}

std::vector<double> cartpole_observe(const CartPoleState& s) {
  return {s.x, s.x_dot, s.theta, s.theta_dot};
}

CartPoleEnv::CartPoleEnv(std::uint64_t seed, CartPoleParams params)
    : params_(params), rng_(seed) {}

std::vector<double> CartPoleEnv::reset() {
  state_ = cartpole_sample_initial_state(rng_);
  steps_ = 0;
  done_ = false;
  return cartpole_observe(state_);
}

StepResult CartPoleEnv::step(int action) {
  if (done_) throw std::logic_error("CartPoleEnv::step: episode is terminal, call reset()");
  if (action != 0 && action != 1)
    throw std::invalid_argument("CartPoleEnv::step: action must be 0 (left) or 1 (right)");

  const double force = action == 1 ? params_.force_mag : -params_.force_mag;
  state_ = cartpole_physics_step(state_, force, params_);
  ++steps_;
  done_ = !cartpole_state_live(state_, params_) || steps_ >= params_.max_steps;

  StepResult result;
  result.observation = cartpole_observe(state_);
  result.reward = 1.0;
  result.done = done_;
  result.steps_taken = steps_;
  return result;
}

}  // namespace dtppo
