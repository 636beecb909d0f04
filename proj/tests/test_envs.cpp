#include <doctest.h>

#include <algorithm>
#include <deque>

#include "curricula/envs/duel.hpp"
#include "curricula/envs/seeded_grid.hpp"
#include "curricula/envs/simon_says.hpp"
#include "curricula/envs/success_metric.hpp"
#include "curricula/errors.hpp"

using namespace curricula;

TEST_CASE("grid generation is a pure function of the seed") {
  for (std::int64_t seed : {0, 13, 77, 150, 199}) {
    const auto a = GridLayout::generate(seed, 9);
    const auto b = GridLayout::generate(seed, 9);
    CHECK(a.start == b.start);
    CHECK(a.goal == b.goal);
    CHECK(a.walls == b.walls);
  }
}

// frozen renderings guard against silent generator drift across platforms
TEST_CASE("grid layouts match frozen goldens") {
  CHECK(GridLayout::generate(0, 9).to_text() ==
        ".........\n"
        "#........\n"
        ".........\n"
        ".........\n"
        ".....G.#.\n"
        "#.S......\n"
        ".........\n"
        ".........\n"
        "#.....#..\n");
  CHECK(GridLayout::generate(150, 9).to_text() ==
        "..#.....S\n"
        "..#....##\n"
        "........#\n"
        "...#...#.\n"
        "..##..#.#\n"
        ".#.....#.\n"
        ".........\n"
        "G...#....\n"
        ".....##..\n");
}

TEST_CASE("every seed has a path and difficulty rises per bucket") {
  double bucket_mean[4] = {0, 0, 0, 0};
  for (std::int64_t seed = 0; seed < 200; ++seed) {
    const auto layout = GridLayout::generate(seed, 9);
    const int path = layout.shortest_path();
    REQUIRE(path > 0);
    bucket_mean[seed / 50] += path;
  }
  for (double& m : bucket_mean) m /= 50.0;
  CHECK(bucket_mean[0] < bucket_mean[1]);
  CHECK(bucket_mean[1] < bucket_mean[2]);
  CHECK(bucket_mean[2] < bucket_mean[3]);
}

TEST_CASE("grid episodes reward reaching the goal") {
  SeededGrid env(SeededGridConfig{200, 9, 120});
  env.reset(EncodedTask::index(3));
  CHECK(env.task_completion() == 0.0);

  // follow a BFS-derived move sequence to the goal
  const auto& layout = env.layout();
  std::vector<int> parent(81, -1);
  std::vector<int> how(81, -1);
  std::deque<int> frontier{layout.start};
  std::vector<bool> seen(81, false);
  seen[static_cast<std::size_t>(layout.start)] = true;
  const int dr[] = {-1, 1, 0, 0};
  const int dc[] = {0, 0, -1, 1};
  while (!frontier.empty()) {
    const int cell = frontier.front();
    frontier.pop_front();
    for (int k = 0; k < 4; ++k) {
      const int r = cell / 9 + dr[k];
      const int c = cell % 9 + dc[k];
      if (r < 0 || r >= 9 || c < 0 || c >= 9) continue;
      const int next = r * 9 + c;
      if (seen[static_cast<std::size_t>(next)] ||
          layout.walls[static_cast<std::size_t>(next)])
        continue;
      seen[static_cast<std::size_t>(next)] = true;
      parent[static_cast<std::size_t>(next)] = cell;
      how[static_cast<std::size_t>(next)] = k;
      frontier.push_back(next);
    }
  }
  std::vector<int> actions;
  for (int cell = layout.goal; cell != layout.start;
       cell = parent[static_cast<std::size_t>(cell)])
    actions.push_back(how[static_cast<std::size_t>(cell)]);
  std::reverse(actions.begin(), actions.end());

  double total = 0.0;
  StepResult last;
  for (int a : actions) {
    last = env.step(a);
    total += last.reward;
  }
  CHECK(last.done);
  CHECK(last.info.task_complete);
  CHECK(total == 1.0);
  CHECK(env.task_completion() == 1.0);
  CHECK(env.episode_return() == 1.0);
}

TEST_CASE("grid episodes time out at max_steps") {
  SeededGrid env(SeededGridConfig{200, 9, 25});
  env.reset(EncodedTask::index(190));
  StepResult res;
  int steps = 0;
  do {
    res = env.step(0);  // bang against the top border
    ++steps;
  } while (!res.done);
  CHECK(steps == 25);
  CHECK(env.task_completion() == 0.0);
}

TEST_CASE("simon says oracle completes every possible task in time") {
  SimonSaysCraft env;
  const auto& space = env.task_space();
  REQUIRE(space.cardinality() == 105);
  CHECK(env.possible_task_count() == 15);

  for (std::int64_t flat = 0; flat < space.cardinality(); ++flat) {
    const auto task = space.from_flat(flat);
    env.reset(task);
    const bool impossible = env.task_flagged_impossible(task);
    bool completed = false;
    for (int step = 0; step < env.config().task_limit; ++step) {
      // scripted oracle: push the lowest unexercised prerequisite, then the
      // task's own skill
      const unsigned mask = env.skills_exercised();
      int action = env.config().chain_length;  // rest
      const int family = env.current_family();
      if (family >= 0) {
        action = family;
        for (int f = 0; f < family; ++f) {
          if (!((mask >> f) & 1u)) {
            action = f;
            break;
          }
        }
      }
      const auto res = env.step(action);
      if (res.info.task_complete) {
        completed = true;
        CHECK(res.reward == 1.0);
        break;
      }
    }
    CHECK(completed == !impossible);
    if (impossible) CHECK(env.task_completion() == 0.0);
  }
}

TEST_CASE("simon says pays -1 on timeout and caps episodes") {
  SimonSaysConfig cfg;
  cfg.episode_limit = 1500;
  cfg.task_limit = 300;
  SimonSaysCraft env(cfg);
  env.seed(5);
  env.reset(env.task_space().encode(TaskLabel("forge:6")));

  std::int64_t steps = 0;
  double reward_at_timeout = 0.0;
  StepResult res;
  do {
    res = env.step(env.config().chain_length);  // rest forever
    ++steps;
    if (steps == 300) reward_at_timeout = res.reward;
  } while (!res.done);
  CHECK(reward_at_timeout == -1.0);
  CHECK(steps == 1500);
  CHECK(env.episode_steps() == 1500);
}

TEST_CASE("simon says completion step pays +1 and requests a new task") {
  SimonSaysCraft env;
  env.reset(env.task_space().encode(TaskLabel("gather:1")));
  const auto res = env.step(0);  // gather once: tier-1 task done at step 1
  CHECK(res.reward == 1.0);
  CHECK(res.info.task_complete);
  CHECK(res.info.needs_new_task);
  CHECK_FALSE(res.done);
}

TEST_CASE("mid-episode task changes keep exercised skills") {
  SimonSaysCraft env;
  env.reset(env.task_space().encode(TaskLabel("chop:1")));
  env.step(0);  // exercise gather
  env.step(1);  // chop becomes effective: task complete
  CHECK(env.task_completion() == 1.0);
  env.change_task(env.task_space().encode(TaskLabel("mine:1")));
  CHECK(env.task_completion() == 0.0);
  // gather and chop remain exercised, so mining works immediately
  const auto res = env.step(2);
  CHECK(res.info.task_complete);
}

TEST_CASE("task progress reports the completed fraction of the tier") {
  SimonSaysCraft env;
  env.reset(env.task_space().encode(TaskLabel("gather:6")));
  for (int i = 0; i < 3; ++i) env.step(0);
  CHECK(env.task_completion() == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("duel payoffs are antisymmetric and zero-sum") {
  for (std::int64_t seed = 0; seed < 8; ++seed) {
    const auto m = duel_payoffs(seed, DuelConfig{});
    for (int i = 0; i < 3; ++i) {
      CHECK(m[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)] == 0.0);
      for (int j = 0; j < 3; ++j)
        CHECK(m[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] ==
              doctest::Approx(-m[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)])
                  .epsilon(1e-12));
    }
  }
}

TEST_CASE("duel_play negates under player swap for deterministic policies") {
  Rng rng(14);
  for (int trial = 0; trial < 20; ++trial) {
    DuelPolicy a = DuelPolicy::uniform(10);
    DuelPolicy b = DuelPolicy::uniform(10);
    for (auto& l : a.logits) l = rng.uniform(-2.0, 2.0);
    for (auto& l : b.logits) l = rng.uniform(-2.0, 2.0);
    const auto seed = rng.uniform_int(100);
    const double forward = duel_play(a, b, seed, DuelConfig{}, true);
    const double reversed = duel_play(b, a, seed, DuelConfig{}, true);
    CHECK(forward == doctest::Approx(-reversed).epsilon(1e-9));
  }
}

TEST_CASE("duel policies round-trip through bytes") {
  Rng rng(21);
  DuelPolicy p = DuelPolicy::uniform(10);
  for (auto& l : p.logits) l = rng.uniform(-3.0, 3.0);
  const auto restored = DuelPolicy::deserialize(p.serialize());
  CHECK(restored.rounds == p.rounds);
  CHECK(restored.logits == p.logits);
}

TEST_CASE("duel episodes run a fixed number of rounds") {
  DuelGame env(DuelConfig{});
  env.seed(9);
  env.reset(EncodedTask::index(2));
  StepResult res;
  int rounds = 0;
  do {
    res = env.step(0);
    ++rounds;
  } while (!res.done);
  CHECK(rounds == 10);
  CHECK(env.task_completion() == (env.episode_return() > 0.0 ? 1.0 : 0.0));
}

TEST_CASE("success metric formulas") {
  CHECK(normalized_return(0.0, 10.0, 0.0) == 0.0);
  CHECK(normalized_return(0.0, 10.0, 10.0) == 1.0);
  CHECK(normalized_return(0.0, 10.0, 2.5) == doctest::Approx(0.25).epsilon(1e-12));
  CHECK_THROWS_AS(normalized_return(1.0, 1.0, 0.5), ConfigError);

  CHECK(clipped_success(1000.0, -5.0) == 0.0);
  CHECK(clipped_success(1000.0, 1200.0) == 1.0);
  CHECK(clipped_success(1000.0, 250.0) == doctest::Approx(0.25).epsilon(1e-12));
  CHECK_THROWS_AS(clipped_success(0.0, 1.0), ConfigError);

  SuccessMetric metric{SuccessMetric::Mode::normalized, -1.0, 1.0, 1.0};
  CHECK(metric(0.0) == doctest::Approx(0.5).epsilon(1e-12));
}
