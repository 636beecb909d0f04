#pragma once

#include <filesystem>
#include <memory>
#include <nlohmann/json.hpp>

#include "curricula/curriculum.hpp"
#include "curricula/dual_curriculum.hpp"
#include "curricula/envs/task_env.hpp"
#include "curricula/learner/evaluator.hpp"
#include "curricula/learner/tabular_policy.hpp"
#include "curricula/sync/messages.hpp"

namespace curricula {

struct LearnerOptions {
  LearnerConfig core;
  EvalConfig eval;
  int eval_period = 0;  // episodes between evaluator rounds; 0 defers to the
                        // curriculum's own update period
  int checkpoint_interval = 800;  // self-play snapshot cadence, in episodes

  nlohmann::json to_json() const;
  static LearnerOptions from_json(const nlohmann::json& j);
  bool operator==(const LearnerOptions&) const;
};

/// One experiment: environment, curriculum, learner, and sync settings, plus
/// the seeds to sweep. Loaded from a JSON document; CLI flags override single
/// fields after parsing.
struct ExperimentConfig {
  nlohmann::json env;         // {"type": ..., parameters...}
  nlohmann::json curriculum;  // {"type": ..., parameters...}
  LearnerOptions learner;
  int workers = 1;
  std::int64_t total_episodes = 1000;
  std::vector<std::uint64_t> seeds = {1};
  std::string output_dir = "runs/out";
  SyncConfig sync;

  nlohmann::json to_json() const;
  static ExperimentConfig from_json(const nlohmann::json& j);
  static ExperimentConfig load(const std::filesystem::path& path);

  bool operator==(const ExperimentConfig& other) const;
};

/// Instantiates the environment named by an env spec. Known types:
/// "seeded_grid", "simon_says", "duel".
std::unique_ptr<TaskEnv> make_env(const nlohmann::json& spec);

/// Parses a task encoding from config JSON against a space: integers index
/// discrete spaces, strings are labels, arrays are box vectors or tuple
/// composites depending on the space.
EncodedTask parse_encoded(const TaskSpace& space, const nlohmann::json& j);

struct BuiltCurriculum {
  std::shared_ptr<Curriculum> curriculum;
  std::shared_ptr<AgentCurriculum> agent;  // set when dual
  bool dual = false;
  bool robust_plr = false;
};

/// Builds a curriculum from a spec. Known types: "constant", "dr",
/// "sequential", "annealing", "plr", "lp", "sfl", "omni", "dual".
/// `run_dir` hosts the opponent store for dual specs (in-memory when empty).
BuiltCurriculum make_curriculum(const nlohmann::json& spec,
                                const TaskSpace& space,
                                const std::filesystem::path& run_dir = {});

}  // namespace curricula
