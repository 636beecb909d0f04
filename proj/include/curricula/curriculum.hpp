#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "curricula/distribution.hpp"
#include "curricula/task_space.hpp"

namespace curricula {

/// Per-step feedback from an environment.
struct StepUpdate {
  double reward = 0.0;
  bool done = false;
  EncodedTask task;
  int env_id = -1;
};

/// End-of-episode feedback.
struct EpisodeRecord {
  double episodic_return = 0.0;
  std::int64_t length = 1;  // >= 1
  EncodedTask task;
  int env_id = -1;
};

/// Arbitrary named metrics from the training process, keyed by string.
/// Each entry is a list of (task, value) pairs.
struct MetricBatch {
  std::map<std::string, std::vector<std::pair<EncodedTask, double>>> entries;
};

/// How a sampled task was chosen. `explore` marks a previously unseen task
/// (PLR); Robust PLR tells the learner to skip gradient updates on those.
enum class SampleTag { none, explore, replay };

struct TaskChoice {
  EncodedTask task;
  SampleTag tag = SampleTag::none;
};

/// Stateful sampler over a task space, updated by training feedback.
///
/// Instances are single-threaded by contract: one logical owner applies
/// updates and samples. Cross-thread use goes through sync::CurriculumService.
class Curriculum {
 public:
  explicit Curriculum(TaskSpace space);
  virtual ~Curriculum() = default;

  const TaskSpace& space() const { return space_; }
  TaskSpace& space() { return space_; }

  /// Sample k tasks i.i.d. from the current distribution (methods with
  /// special rules, e.g. PLR's unseen-first pass, document the deviation).
  std::vector<EncodedTask> sample(int k = 1);

  virtual std::vector<TaskChoice> sample_choices(int k);

  /// Current distribution over flat task indices. Throws NotEnumerableError
  /// for curricula running over non-enumerable (box) spaces.
  virtual SampleDistribution sample_distribution() const = 0;

  virtual void update_on_step(const StepUpdate&) {}
  virtual void update_on_episode(const EpisodeRecord&) {}
  virtual void update_task_progress(const EncodedTask&, double) {}

  /// Routes each metric key to the curriculum. Unrecognized keys bump a
  /// warning counter and are otherwise ignored.
  void update_on_demand(const MetricBatch& batch);

  /// True only for curricula that consume per-step data; the sync layer uses
  /// this to suppress step traffic entirely.
  virtual bool requires_step_updates() const { return false; }

  /// Metric keys this curriculum consumes via update_on_demand.
  virtual std::vector<std::string> consumed_metrics() const { return {}; }

  /// Evaluation cadence requested by the method (in learner updates), when
  /// it has one.
  virtual std::optional<int> evaluation_period() const { return std::nullopt; }

  /// Seeds the curriculum's own generator and the task space generator.
  virtual void seed(std::uint64_t s);

  std::int64_t unknown_metric_count() const { return unknown_metrics_; }

 protected:
  /// Returns true if the key was consumed.
  virtual bool consume_metric(
      const std::string& key,
      const std::vector<std::pair<EncodedTask, double>>& values);

  EncodedTask sample_from(const SampleDistribution& dist);

  TaskSpace space_;
  Rng rng_;

 private:
  std::int64_t unknown_metrics_ = 0;
};

}  // namespace curricula
