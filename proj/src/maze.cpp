#include "dtppo/maze.hpp"

#include <stdexcept>

namespace dtppo {

namespace {

constexpr int opposite(int direction) {
  switch (direction) {
    case 0: return 1;
    case 1: return 0;
    case 2: return 3;
    default: return 2;
  }
}

}  // namespace

MazeGrid::MazeGrid(int m) : m_(m) {
  if (m < 2) throw std::invalid_argument("MazeGrid: side length must be >= 2");
  walls_.assign(static_cast<std::size_t>(m) * m * 4, true);
}

bool MazeGrid::blocked(MazePosition p, int direction) const {
  if (!in_bounds(p)) throw std::out_of_range("MazeGrid::blocked: position out of bounds");
  if (direction < 0 || direction >= 4)
    throw std::invalid_argument("MazeGrid::blocked: bad direction");
  return walls_[wall_index(p, direction)];
}

void MazeGrid::open_passage(MazePosition p, int direction) {
  MazePosition q{p.x + kMazeDeltas[direction][0], p.y + kMazeDeltas[direction][1]};
  if (!in_bounds(p) || !in_bounds(q))
    throw std::invalid_argument("MazeGrid::open_passage: boundary walls are fixed");
  walls_[wall_index(p, direction)] = false;
  walls_[wall_index(q, opposite(direction))] = false;
}

int MazeGrid::open_passage_count() const {
  int count = 0;
  for (int y = 0; y < m_; ++y) {
    for (int x = 0; x < m_; ++x) {
      // count each passage from its upper/left side only
      if (x + 1 < m_ && !walls_[wall_index({x, y}, 3)]) ++count;
      if (y + 1 < m_ && !walls_[wall_index({x, y}, 1)]) ++count;
    }
  }
  return count;
}

MazeGrid maze_generate(int m, Rng& rng) {
  MazeGrid grid(m);
  std::vector<bool> visited(static_cast<std::size_t>(m) * m, false);
  std::vector<MazePosition> stack;
  stack.push_back(grid.entry());
  visited[0] = true;

  std::array<int, 4> dirs = {0, 1, 2, 3};
  while (!stack.empty()) {
    const MazePosition cur = stack.back();
    rng.shuffle(std::span<int>(dirs));
    bool advanced = false;
    for (int d : dirs) {
      const MazePosition next{cur.x + kMazeDeltas[d][0], cur.y + kMazeDeltas[d][1]};
      if (!grid.in_bounds(next)) continue;
      if (visited[static_cast<std::size_t>(next.y) * m + next.x]) continue;
      grid.open_passage(cur, d);
      visited[static_cast<std::size_t>(next.y) * m + next.x] = true;
      stack.push_back(next);
      advanced = true;
      break;
    }
    if (!advanced) stack.pop_back();
  }
  return grid;
}

std::vector<double> maze_observe(const MazeGrid& grid, MazePosition pos) {
  if (!grid.in_bounds(pos)) throw std::out_of_range("maze_observe: position out of bounds");
  const double denom = grid.size() - 1;
  return {pos.x / denom, pos.y / denom};
}

MazeEnv::MazeEnv(int m, std::uint64_t seed) : grid_(2), pos_{0, 0} {
  Rng rng(seed);
  grid_ = maze_generate(m, rng);
}

MazeEnv::MazeEnv(MazeGrid grid) : grid_(std::move(grid)), pos_{0, 0} {}

double MazeEnv::step_penalty() const {
  const double cells = static_cast<double>(grid_.size()) * grid_.size();
  return 0.1 / cells;
}

std::vector<double> MazeEnv::reset() {
  pos_ = grid_.entry();
  steps_ = 0;
  done_ = false;
  return maze_observe(grid_, pos_);
}

StepResult MazeEnv::step(int action) {
  if (done_) throw std::logic_error("MazeEnv::step: episode is terminal, call reset()");
  if (action < 0 || action >= kMazeActionCount)
    throw std::invalid_argument("MazeEnv::step: bad action");

  if (!grid_.blocked(pos_, action)) {
    pos_.x += kMazeDeltas[action][0];
    pos_.y += kMazeDeltas[action][1];
  }
  ++steps_;

  StepResult result;
  const bool at_exit = pos_ == grid_.exit();
  result.reward = at_exit ? 1.0 : -step_penalty();
  done_ = at_exit || steps_ >= max_steps();
  result.observation = maze_observe(grid_, pos_);
  result.done = done_;
  result.steps_taken = steps_;
  return result;
}

}  // namespace dtppo
