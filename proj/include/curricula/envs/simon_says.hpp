#pragma once

#include "curricula/envs/task_env.hpp"
#include "curricula/rng.hpp"

namespace curricula {

struct SimonSaysConfig {
  int chain_length = 5;            // real skills, dependency-chained
  std::vector<int> tiers = {1, 3, 6};
  int impossible_families = 30;    // fake skills; times tiers = 90 distractors
  int episode_limit = 1500;
  int task_limit = 300;
  // chance an eligible skill tap takes effect; below 1.0 this makes success
  // rates graded instead of all-or-nothing
  double skill_success_prob = 1.0;
};

/// Simon-Says achievement environment. The agent is assigned one task at a
/// time out of a chain of skills with repetition tiers; completing it within
/// the per-task step limit pays +1 and requests a new task mid-episode,
/// timing out pays -1 and also requests a new task. Skill f only takes
/// effect once skills 0..f-1 have each been exercised this episode, and
/// impossible tasks reference skills that no action performs, so their
/// success rate is 0 by construction.
///
/// Task labels follow "family:tier". When a task ends and no new task has
/// been assigned before the next step (unwrapped usage), the environment
/// samples one from its own task space.
class SimonSaysCraft : public TaskEnv {
 public:
  explicit SimonSaysCraft(SimonSaysConfig cfg = {});

  const TaskSpace& task_space() const override { return space_; }
  const EncodedTask& current_task() const override { return task_; }
  Observation reset(std::optional<EncodedTask> new_task = {}) override;
  StepResult step(int action) override;
  void change_task(const EncodedTask& new_task) override;
  double task_completion() const override;
  int action_count() const override { return cfg_.chain_length + 1; }
  int state_count() const override;
  int state_id() const override;
  std::int64_t episode_steps() const override { return steps_; }
  double episode_return() const override { return return_; }
  bool task_flagged_impossible(const EncodedTask& task) const override;
  std::string render_text() const override;
  void seed(std::uint64_t s) override { fallback_rng_.seed(s); }

  const SimonSaysConfig& config() const { return cfg_; }
  int possible_task_count() const { return possible_count_; }
  std::int64_t tasks_completed() const { return tasks_completed_; }
  unsigned skills_exercised() const { return skills_done_; }
  /// Chain index of the current task's skill; -1 for impossible tasks.
  int current_family() const { return current_.family; }
  int current_tier() const { return current_.tier; }

 private:
  struct TaskMeta {
    int family = -1;  // index into the chain, -1 for impossible tasks
    int tier = 1;
    bool possible = false;
  };

  Observation observe() const;

  SimonSaysConfig cfg_;
  TaskSpace space_;
  std::vector<TaskMeta> meta_;
  int possible_count_ = 0;
  int max_tier_ = 1;

  EncodedTask task_;
  TaskMeta current_;
  unsigned skills_done_ = 0;  // bitmask over chain skills, per episode
  int completions_ = 0;
  std::int64_t task_steps_ = 0;
  std::int64_t steps_ = 0;
  double return_ = 0.0;
  std::int64_t tasks_completed_ = 0;
  bool awaiting_task_ = false;
  Rng fallback_rng_;
};

}  // namespace curricula
