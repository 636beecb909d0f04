#include "curricula/envs/seeded_grid.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <sstream>

#include "curricula/errors.hpp"

namespace curricula {

namespace {

// Difficulty rises per 50-seed block: goal distance range and wall density.
struct Bucket {
  int d_min, d_max;
  double wall_density;
};

Bucket bucket_for(std::int64_t seed) {
  const int b = static_cast<int>((seed / 50) % 4);
  return Bucket{2 + 4 * b, 4 + 4 * b, 0.08 + 0.07 * b};
}

}  // namespace

GridLayout GridLayout::generate(std::int64_t seed, int size) {
  if (size < 3) throw ConfigError("grid size must be >= 3");
  GridLayout layout;
  layout.size = size;
  layout.walls.assign(static_cast<std::size_t>(size) * size, false);

  Rng rng(static_cast<std::uint64_t>(seed) * 0x9e3779b97f4a7c15ULL + 0x1234);
  const Bucket bucket = bucket_for(seed);
  const int max_dist = 2 * (size - 1);
  int d_min = std::min(bucket.d_min, max_dist);
  int d_max = std::min(bucket.d_max, max_dist);

  // pick a start/goal pair whose Manhattan distance lands in the bucket,
  // widening the window if the draw keeps missing
  int tries = 0;
  while (true) {
    const int start = static_cast<int>(rng.uniform_int(size * size));
    const int goal = static_cast<int>(rng.uniform_int(size * size));
    const int dist = std::abs(start / size - goal / size) +
                     std::abs(start % size - goal % size);
    if (dist >= d_min && dist <= d_max && start != goal) {
      layout.start = start;
      layout.goal = goal;
      break;
    }
    if (++tries % 256 == 0) {
      d_min = std::max(1, d_min - 1);
      d_max = std::min(max_dist, d_max + 1);
    }
  }

  // carve a random monotone path; those cells stay wall-free
  std::vector<bool> carved(layout.walls.size(), false);
  int r = layout.start / size;
  int c = layout.start % size;
  const int gr = layout.goal / size;
  const int gc = layout.goal % size;
  carved[static_cast<std::size_t>(layout.start)] = true;
  while (r != gr || c != gc) {
    const int row_moves = std::abs(gr - r);
    const int col_moves = std::abs(gc - c);
    if (rng.uniform_int(row_moves + col_moves) < row_moves) {
      r += gr > r ? 1 : -1;
    } else {
      c += gc > c ? 1 : -1;
    }
    carved[static_cast<std::size_t>(r * size + c)] = true;
  }

  for (std::size_t cell = 0; cell < layout.walls.size(); ++cell) {
    if (carved[cell]) continue;
    if (rng.uniform() < bucket.wall_density) layout.walls[cell] = true;
  }
  return layout;
}

int GridLayout::shortest_path() const {
  std::vector<int> dist(walls.size(), -1);
  std::deque<int> frontier;
  dist[static_cast<std::size_t>(start)] = 0;
  frontier.push_back(start);
  const int dr[] = {-1, 1, 0, 0};
  const int dc[] = {0, 0, -1, 1};
  while (!frontier.empty()) {
    const int cell = frontier.front();
    frontier.pop_front();
    if (cell == goal) return dist[static_cast<std::size_t>(cell)];
    const int r = cell / size;
    const int c = cell % size;
    for (int k = 0; k < 4; ++k) {
      const int nr = r + dr[k];
      const int nc = c + dc[k];
      if (nr < 0 || nr >= size || nc < 0 || nc >= size) continue;
      const int next = nr * size + nc;
      if (walls[static_cast<std::size_t>(next)] ||
          dist[static_cast<std::size_t>(next)] >= 0)
        continue;
      dist[static_cast<std::size_t>(next)] = dist[static_cast<std::size_t>(cell)] + 1;
      frontier.push_back(next);
    }
  }
  return -1;
}

std::string GridLayout::to_text(int agent_cell) const {
  std::ostringstream out;
  for (int r = 0; r < size; ++r) {
    for (int c = 0; c < size; ++c) {
      const int cell = r * size + c;
      char ch = '.';
      if (walls[static_cast<std::size_t>(cell)]) ch = '#';
      if (cell == goal) ch = 'G';
      if (cell == start) ch = 'S';
      if (cell == agent_cell) ch = 'A';
      out << ch;
    }
    out << '\n';
  }
  return out.str();
}

SeededGrid::SeededGrid(SeededGridConfig cfg)
    : cfg_(cfg),
      space_(TaskSpace::discrete(cfg.seed_count)),
      task_(EncodedTask::index(0)),
      layout_(GridLayout::generate(0, cfg.grid_size)) {
  if (cfg_.max_steps < 1) throw ConfigError("grid max_steps must be >= 1");
  agent_ = layout_.start;
}

Observation SeededGrid::reset(std::optional<EncodedTask> new_task) {
  if (new_task) change_task(*new_task);
  agent_ = layout_.start;
  reached_ = false;
  steps_ = 0;
  return_ = 0.0;
  return observe();
}

void SeededGrid::change_task(const EncodedTask& new_task) {
  if (!space_.contains(new_task))
    throw OutOfRangeError("seed outside the grid task space");
  task_ = new_task;
  layout_ = GridLayout::generate(task_.as_index(), cfg_.grid_size);
  agent_ = layout_.start;
}

StepResult SeededGrid::step(int action) {
  if (action < 0 || action >= 4) throw OutOfRangeError("grid action must be 0..3");
  ++steps_;
  const int size = layout_.size;
  int r = agent_ / size;
  int c = agent_ % size;
  switch (action) {
    case 0: r -= 1; break;
    case 1: r += 1; break;
    case 2: c -= 1; break;
    case 3: c += 1; break;
  }
  if (r >= 0 && r < size && c >= 0 && c < size &&
      !layout_.walls[static_cast<std::size_t>(r * size + c)]) {
    agent_ = r * size + c;
  }

  StepResult res;
  res.reward = 0.0;
  if (agent_ == layout_.goal && !reached_) {
    reached_ = true;
    res.reward = 1.0;
  }
  return_ += res.reward;
  res.done = reached_ || steps_ >= cfg_.max_steps;
  res.info.task_complete = reached_;
  res.info.task_progress = reached_ ? 1.0 : 0.0;
  res.obs = observe();
  return res;
}

double SeededGrid::task_completion() const { return reached_ ? 1.0 : 0.0; }

int SeededGrid::state_count() const {
  const int cells = cfg_.grid_size * cfg_.grid_size;
  if (cfg_.shared_states) return cells * cells * 16;
  return static_cast<int>(cfg_.seed_count) * cells;
}

int SeededGrid::state_id() const {
  const int cells = cfg_.grid_size * cfg_.grid_size;
  if (!cfg_.shared_states)
    return static_cast<int>(task_.as_index()) * cells + agent_;
  const int size = layout_.size;
  const int r = agent_ / size;
  const int c = agent_ % size;
  unsigned walls = 0;
  const int dr[] = {-1, 1, 0, 0};
  const int dc[] = {0, 0, -1, 1};
  for (int k = 0; k < 4; ++k) {
    const int nr = r + dr[k];
    const int nc = c + dc[k];
    const bool blocked = nr < 0 || nr >= size || nc < 0 || nc >= size ||
                         layout_.walls[static_cast<std::size_t>(nr * size + nc)];
    if (blocked) walls |= 1u << k;
  }
  return (layout_.goal * cells + agent_) * 16 + static_cast<int>(walls);
}

Observation SeededGrid::observe() const {
  const double denom = static_cast<double>(layout_.size - 1);
  return {
      static_cast<double>(agent_ / layout_.size) / denom,
      static_cast<double>(agent_ % layout_.size) / denom,
      static_cast<double>(layout_.goal / layout_.size) / denom,
      static_cast<double>(layout_.goal % layout_.size) / denom,
      static_cast<double>(task_.as_index()) /
          static_cast<double>(std::max<std::int64_t>(cfg_.seed_count - 1, 1)),
  };
}

std::string SeededGrid::render_text() const { return layout_.to_text(agent_); }

}  // namespace curricula
