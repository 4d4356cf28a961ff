#ifndef DTPPO_MAZE_HPP
#define DTPPO_MAZE_HPP

#include <array>
#include <cstdint>
#include <vector>

#include "dtppo/rng.hpp"
#include "dtppo/step_result.hpp"

namespace dtppo {

// Action / wall direction order: up=0, down=1, left=2, right=3.
enum class MazeAction : int { up = 0, down = 1, left = 2, right = 3 };

inline constexpr int kMazeActionCount = 4;
inline constexpr int kMazeObsDim = 2;

// (dx, dy) for each direction; up decreases y (row 0 is the top).
constexpr std::array<std::array<int, 2>, 4> kMazeDeltas = {{{0, -1}, {0, 1}, {-1, 0}, {1, 0}}};

struct MazePosition {
  int x = 0;
  int y = 0;
  bool operator==(const MazePosition&) const = default;
};

// m x m grid of cells with per-cell wall flags. Wall flags are kept symmetric
// between neighbouring cells and boundary walls are always present.
class MazeGrid {
 public:
  explicit MazeGrid(int m);

  int size() const { return m_; }
  MazePosition entry() const { return {0, 0}; }
  MazePosition exit() const { return {m_ - 1, m_ - 1}; }

  bool in_bounds(MazePosition p) const {
    return p.x >= 0 && p.x < m_ && p.y >= 0 && p.y < m_;
  }

  bool blocked(MazePosition p, int direction) const;

  // Removes the wall between p and its neighbour in `direction`, on both
  // sides. Boundary walls cannot be opened.
  void open_passage(MazePosition p, int direction);

  // Number of open internal passages (each counted once).
  int open_passage_count() const;

 private:
  int wall_index(MazePosition p, int direction) const {
    return (p.y * m_ + p.x) * 4 + direction;
  }

  int m_;
  std::vector<bool> walls_;
};

// Perfect maze over an m x m grid via randomized depth-first backtracking
// from the entry cell. Deterministic for a given rng state. Requires m >= 2.
MazeGrid maze_generate(int m, Rng& rng);

std::vector<double> maze_observe(const MazeGrid& grid, MazePosition pos);

// Navigation task on a fixed maze: reach the exit from the entry. Each step
// that does not reach the exit costs 0.1/m^2; reaching the exit pays +1.
// Moves into walls are no-ops (the penalty still applies). Episodes are
// capped at 10*m^2 steps.
class MazeEnv {
 public:
  MazeEnv(int m, std::uint64_t seed);
  explicit MazeEnv(MazeGrid grid);

  std::vector<double> reset();
  StepResult step(int action);

  const MazeGrid& grid() const { return grid_; }
  MazePosition position() const { return pos_; }
  int steps_taken() const { return steps_; }
  int max_steps() const { return 10 * grid_.size() * grid_.size(); }
  double step_penalty() const;
  bool done() const { return done_; }

  int action_count() const { return kMazeActionCount; }
  int obs_dim() const { return kMazeObsDim; }

 private:
  MazeGrid grid_;
  MazePosition pos_;
  int steps_ = 0;
  bool done_ = true;
};

}  // namespace dtppo

#endif  // DTPPO_MAZE_HPP
