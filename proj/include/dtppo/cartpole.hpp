#ifndef DTPPO_CARTPOLE_HPP
#define DTPPO_CARTPOLE_HPP

#include <cstdint>
#include <vector>

#include "dtppo/rng.hpp"
#include "dtppo/step_result.hpp"

namespace dtppo {

// [x, x_dot, theta, theta_dot]; theta = 0 means upright.
struct CartPoleState {
  double x = 0.0;
  double x_dot = 0.0;
  double theta = 0.0;
  double theta_dot = 0.0;
};

struct CartPoleParams {
  double gravity = 9.8;
  double mass_cart = 1.0;
  double mass_pole = 0.1;
  double half_length = 0.5;
  double force_mag = 10.0;
  double tau = 0.02;
  double angle_limit = 0.2095;
  double position_limit = 2.4;
  int max_steps = 100;
};

enum class CartPoleAction : int { left = 0, right = 1 };

inline constexpr int kCartPoleActionCount = 2;
inline constexpr int kCartPoleObsDim = 4;
inline constexpr double kCartPoleInitRange = 0.05;

// One explicit-Euler step of the classic cart-pole dynamics under a horizontal
// force. Derivatives are evaluated at the old state.
CartPoleState cartpole_physics_step(const CartPoleState& s, double force,
                                    const CartPoleParams& p);

bool cartpole_state_live(const CartPoleState& s, const CartPoleParams& p);

// All four components drawn i.i.d. uniform from [-kCartPoleInitRange, +kCartPoleInitRange].
template <typename R>
CartPoleState cartpole_sample_initial_state(R& rng) {
  CartPoleState s;
  s.x = rng.uniform(-kCartPoleInitRange, kCartPoleInitRange);
  s.x_dot = rng.uniform(-kCartPoleInitRange, kCartPoleInitRange);
  s.theta = rng.uniform(-kCartPoleInitRange, kCartPoleInitRange);
  s.theta_dot = rng.uniform(-kCartPoleInitRange, kCartPoleInitRange);
  return s;
}

std::vector<double> cartpole_observe(const CartPoleState& s);

// Balance task: +1 per step, episode ends when the pole tilts past the angle
// limit, the cart leaves the track, or max_steps elapse.
class CartPoleEnv {
 public:
  explicit CartPoleEnv(std::uint64_t seed, CartPoleParams params = {});

  std::vector<double> reset();
  StepResult step(int action);

  const CartPoleState& state() const { return state_; }
  const CartPoleParams& params() const { return params_; }
  int steps_taken() const { return steps_; }
  bool done() const { return done_; }

  static constexpr int action_count() { return kCartPoleActionCount; }
  static constexpr int obs_dim() { return kCartPoleObsDim; }

 private:
  CartPoleParams params_;
  Rng rng_;
  CartPoleState state_;
  int steps_ = 0;
  bool done_ = true;
};

}  // namespace dtppo

#endif  // DTPPO_CARTPOLE_HPP
