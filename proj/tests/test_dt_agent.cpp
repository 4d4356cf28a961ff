#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "dtppo/dt_agent.hpp"
#include "dtppo/maze.hpp"
#include "dtppo/rng.hpp"

using namespace dtppo;

namespace {

int argmax(const std::vector<double>& v) {
  return static_cast<int>(std::max_element(v.begin(), v.end()) - v.begin());
}

}  // namespace

TEST_CASE("cart pole utilities scale the tilt and oppose each other") {
  const UtilityVector u = cartpole_utilities(0.1);
  REQUIRE(u.size() == 2);
  CHECK(u[0] == doctest::Approx(-0.1 / 0.209).epsilon(1e-12));
  CHECK(u[1] == doctest::Approx(0.1 / 0.209).epsilon(1e-12));

  for (double theta : {-0.2, -0.05, 0.0, 0.07, 0.19}) {
    const UtilityVector pos = cartpole_utilities(theta);
    const UtilityVector neg = cartpole_utilities(-theta);
    CHECK(pos[0] == doctest::Approx(neg[1]).epsilon(1e-12));
    CHECK(pos[1] == doctest::Approx(neg[0]).epsilon(1e-12));
  }
  CHECK_THROWS_AS(cartpole_utilities(std::numeric_limits<double>::quiet_NaN()),
                  std::invalid_argument);
}

TEST_CASE("cart pole DT distribution prefers pushing toward the lean") {
  const DtConfig config;
  const ActionDistribution right_lean = cartpole_dt_distribution(0.05, config);
  CHECK(right_lean[1] > right_lean[0]);
  CHECK(right_lean[0] + right_lean[1] == doctest::Approx(1.0).epsilon(1e-12));
  const ActionDistribution left_lean = cartpole_dt_distribution(-0.05, config);
  CHECK(left_lean[0] > left_lean[1]);
  const ActionDistribution balanced = cartpole_dt_distribution(0.0, config);
  CHECK(balanced[0] == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("maze utilities: inverse distance of the moved-to cell, floor at the exit") {
  // Fully open 5x5 grid so every direction is walkable where in bounds.
  MazeGrid g(5);
  for (int y = 0; y < 5; ++y)
    for (int x = 0; x < 5; ++x) {
      if (x + 1 < 5) g.open_passage({x, y}, static_cast<int>(MazeAction::right));
      if (y + 1 < 5) g.open_passage({x, y}, static_cast<int>(MazeAction::down));
    }

  const DtConfig config;
  const UtilityVector u = maze_utilities(g, {2, 2}, config);
  REQUIRE(u.size() == 4);
  // Moving down lands on (2,3): distance to (4,4) is sqrt(5).
  CHECK(u[static_cast<int>(MazeAction::down)] ==
        doctest::Approx(0.4472136).epsilon(1e-6));
  // Moving up lands on (2,1): distance sqrt(4+9) = sqrt(13).
  CHECK(u[static_cast<int>(MazeAction::up)] ==
        doctest::Approx(1.0 / std::sqrt(13.0)).epsilon(1e-9));

  // One step from the exit, stepping onto it hits the distance floor.
  const UtilityVector near_exit = maze_utilities(g, {4, 3}, config);
  CHECK(near_exit[static_cast<int>(MazeAction::down)] == doctest::Approx(2.0));

  // Blocked directions score exactly 0.
  MazeGrid walled(3);
  walled.open_passage({0, 0}, static_cast<int>(MazeAction::right));
  const UtilityVector blocked = maze_utilities(walled, {0, 0}, config);
  CHECK(blocked[static_cast<int>(MazeAction::up)] == 0.0);
  CHECK(blocked[static_cast<int>(MazeAction::down)] == 0.0);
  CHECK(blocked[static_cast<int>(MazeAction::left)] == 0.0);
  CHECK(blocked[static_cast<int>(MazeAction::right)] > 0.0);
}

TEST_CASE("maze utilities: blocked directions are 0 across random mazes") {
  for (int s = 0; s < 50; ++s) {
    Rng rng(1000 + s);
    const int m = 2 + rng.uniform_int(7);
    const MazeGrid g = maze_generate(m, rng);
    const DtConfig config;
    for (int trial = 0; trial < 10; ++trial) {
      const MazePosition p{rng.uniform_int(m), rng.uniform_int(m)};
      const UtilityVector u = maze_utilities(g, p, config);
      for (int dir = 0; dir < 4; ++dir) {
        if (g.blocked(p, dir)) {
          CHECK(u[dir] == 0.0);
        } else {
          CHECK(u[dir] > 0.0);
        }
      }
    }
  }
}

TEST_CASE("maze utilities: strictly closer open moves score strictly higher") {
  Rng rng(404);
  const DtConfig config;
  for (int s = 0; s < 25; ++s) {
    const int m = 3 + rng.uniform_int(6);
    Rng maze_rng(rng.next_u64());
    const MazeGrid g = maze_generate(m, maze_rng);
    for (int trial = 0; trial < 20; ++trial) {
      const MazePosition p{rng.uniform_int(m), rng.uniform_int(m)};
      const UtilityVector u = maze_utilities(g, p, config);
      for (int a = 0; a < 4; ++a) {
        if (g.blocked(p, a)) continue;
        for (int b = 0; b < 4; ++b) {
          if (b == a || g.blocked(p, b)) continue;
          const MazePosition pa{p.x + kMazeDeltas[a][0], p.y + kMazeDeltas[a][1]};
          const MazePosition pb{p.x + kMazeDeltas[b][0], p.y + kMazeDeltas[b][1]};
          const auto dist = [&](MazePosition q) {
            const double dx = g.exit().x - q.x;
            const double dy = g.exit().y - q.y;
            return std::sqrt(dx * dx + dy * dy);
          };
          const double da = dist(pa);
          const double db = dist(pb);
          if (da < db && da >= config.distance_floor) CHECK(u[a] > u[b]);
        }
      }
    }
  }
}

TEST_CASE("tempered softmax: fixed oracle, normalization, shift invariance") {
  const ActionDistribution p = tempered_softmax({0.0, 1.0}, 0.5);
  CHECK(p[0] == doctest::Approx(0.11920292).epsilon(1e-7));
  CHECK(p[1] == doctest::Approx(0.88079708).epsilon(1e-7));

  Rng rng(31);
  for (double temperature : {0.05, 0.1, 1.0, 10.0}) {
    for (int trial = 0; trial < 50; ++trial) {
      UtilityVector u(4);
      for (double& v : u) v = rng.uniform(-10.0, 10.0);
      const ActionDistribution q = tempered_softmax(u, temperature);
      double sum = 0.0;
      for (double v : q) {
        CHECK(v > 0.0);
        sum += v;
      }
      CHECK(sum == doctest::Approx(1.0).epsilon(1e-9));

      const double shift = rng.uniform(-100.0, 100.0);
      UtilityVector shifted = u;
      for (double& v : shifted) v += shift;
      const ActionDistribution q2 = tempered_softmax(shifted, temperature);
      for (std::size_t i = 0; i < q.size(); ++i)
        CHECK(q2[i] == doctest::Approx(q[i]).epsilon(1e-9));
    }
  }
}

TEST_CASE("tempered softmax clamps vanishing probabilities") {
  const ActionDistribution p = tempered_softmax({0.0, 100.0}, 0.1);
  CHECK(p[0] >= 0.99e-12);
  CHECK(std::log(p[0]) >= -27.7);
  CHECK(p[0] + p[1] == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("tempered softmax rejects bad temperatures") {
  CHECK_THROWS_AS(tempered_softmax({0.0, 1.0}, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(tempered_softmax({0.0, 1.0}, -1.0), std::invalid_argument);
}

TEST_CASE("reverse softmax is the elementwise log") {
  const std::vector<double> logits = reverse_softmax({0.5, 0.5});
  CHECK(logits[0] == doctest::Approx(-0.69315).epsilon(1e-5));
  CHECK(logits[1] == doctest::Approx(-0.69315).epsilon(1e-5));
  CHECK_THROWS_AS(reverse_softmax({1.0, 0.0}), std::invalid_argument);
  CHECK_THROWS_AS(reverse_softmax({1.5, -0.5}), std::invalid_argument);
}

TEST_CASE("reverse softmax after tempered softmax preserves the argmax") {
  Rng rng(37);
  for (int trial = 0; trial < 100; ++trial) {
    UtilityVector u(4);
    for (double& v : u) v = rng.uniform(-5.0, 5.0);
    const ActionDistribution p = tempered_softmax(u, 0.1);
    const std::vector<double> logits = reverse_softmax(p);
    CHECK(argmax(logits) == argmax(u));
  }
}

TEST_CASE("dt_select_action matches the distribution") {
  Rng rng(41);
  const ActionDistribution near_point = tempered_softmax({10.0, 0.0, 0.0, 0.0}, 0.1);
  int hits = 0;
  for (int i = 0; i < 1000; ++i)
    if (dt_select_action(near_point, rng) == 0) ++hits;
  CHECK(hits >= 990);

  const ActionDistribution uniform{0.25, 0.25, 0.25, 0.25};
  int counts[4] = {0, 0, 0, 0};
  for (int i = 0; i < 10000; ++i) ++counts[dt_select_action(uniform, rng)];
  for (int c : counts) {
    CHECK(c >= 2200);
    CHECK(c <= 2800);
  }

  Rng a(5);
  Rng b(5);
  CHECK(dt_select_action(uniform, a) == dt_select_action(uniform, b));
}

TEST_CASE("DtConfig validation") {
  DtConfig config;
  CHECK_NOTHROW(validate(config, 4));
  config.temperature = 0.0;
  CHECK_THROWS_AS(validate(config, 4), std::invalid_argument);
  config = DtConfig{};
  config.min_prob_clamp = 0.3;  // >= 1/4
  CHECK_THROWS_AS(validate(config, 4), std::invalid_argument);
  config = DtConfig{};
  config.distance_floor = 0.0;
  CHECK_THROWS_AS(validate(config, 4), std::invalid_argument);
}

TEST_CASE("maze DT distribution concentrates on distance-reducing moves") {
  MazeGrid g(5);
  for (int y = 0; y < 5; ++y)
    for (int x = 0; x < 5; ++x) {
      if (x + 1 < 5) g.open_passage({x, y}, static_cast<int>(MazeAction::right));
      if (y + 1 < 5) g.open_passage({x, y}, static_cast<int>(MazeAction::down));
    }
  const DtConfig config;
  const ActionDistribution p = maze_dt_distribution(g, {2, 2}, config);
  // down and right tie for the best move (distance sqrt(5) to the exit),
  // up/left tie for the worst (sqrt(13)). With utilities 1/distance and
  // temperature 0.1 the tied-best probability is 1 / (2 + 2 e^-delta) with
  // delta = (1/sqrt(5) - 1/sqrt(13)) / 0.1.
  const double delta = (1.0 / std::sqrt(5.0) - 1.0 / std::sqrt(13.0)) / 0.1;
  const double best = 1.0 / (2.0 + 2.0 * std::exp(-delta));
  const double worst = std::exp(-delta) / (2.0 + 2.0 * std::exp(-delta));
  CHECK(p[static_cast<int>(MazeAction::down)] ==
        doctest::Approx(p[static_cast<int>(MazeAction::right)]).epsilon(1e-9));
  CHECK(p[static_cast<int>(MazeAction::down)] == doctest::Approx(best).epsilon(1e-9));
  CHECK(p[static_cast<int>(MazeAction::right)] == doctest::Approx(best).epsilon(1e-9));
  CHECK(p[static_cast<int>(MazeAction::up)] == doctest::Approx(worst).epsilon(1e-9));
  CHECK(p[static_cast<int>(MazeAction::left)] == doctest::Approx(worst).epsilon(1e-9));
}
