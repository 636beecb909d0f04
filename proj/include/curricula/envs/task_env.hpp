#pragma once

#include <optional>
#include <string>
#include <vector>

#include "curricula/task_space.hpp"

namespace curricula {

using Observation = std::vector<double>;

struct StepInfo {
  bool task_complete = false;   // the current task just finished successfully
  bool task_failed = false;     // the current task just timed out
  bool needs_new_task = false;  // mid-episode reassignment point
  double task_progress = 0.0;
};

struct StepResult {
  Observation obs;
  double reward = 0.0;
  bool done = false;
  StepInfo info;
};

/// Multitask environment contract. Tasks are swapped during reset via the
/// optional new_task argument, or mid-episode via change_task. Observations
/// include the encoded goal so task-conditional policies are possible, and
/// state_id exposes a discrete state index for tabular learners.
class TaskEnv {
 public:
  virtual ~TaskEnv() = default;

  virtual const TaskSpace& task_space() const = 0;
  virtual const EncodedTask& current_task() const = 0;

  /// Resets for a new episode; when new_task is supplied the task is changed
  /// first. Returns the first observation.
  virtual Observation reset(std::optional<EncodedTask> new_task = {}) = 0;

  virtual StepResult step(int action) = 0;

  /// Reconfigures the environment for a new task. Mid-episode calls must not
  /// lose non-task episode state.
  virtual void change_task(const EncodedTask& new_task) = 0;

  /// Progress on the current task in [0, 1].
  virtual double task_completion() const = 0;

  virtual int action_count() const = 0;
  virtual int state_count() const = 0;
  virtual int state_id() const = 0;

  virtual std::int64_t episode_steps() const = 0;
  virtual double episode_return() const = 0;

  /// True for tasks known unreachable by construction; the evaluator can
  /// assign them a success rate of 0 without rollouts.
  virtual bool task_flagged_impossible(const EncodedTask&) const {
    return false;
  }

  virtual std::string render_text() const { return {}; }

  virtual void seed(std::uint64_t) {}
};

}  // namespace curricula
