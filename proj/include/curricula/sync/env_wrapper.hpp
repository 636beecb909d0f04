#pragma once

#include <memory>

#include "curricula/envs/task_env.hpp"
#include "curricula/sync/service.hpp"

namespace curricula {

/// Environment-side synchronization: pops task assignments on reset (and on
/// mid-episode reassignment points), forwards step/episode/progress feedback
/// to the curriculum service, and batches step records when the curriculum
/// wants them.
///
/// In dual mode the assignment is a [task, opponent] composite; only the task
/// component reaches the environment while feedback carries the full joint
/// encoding so the dual curriculum can route it.
class EnvSyncWrapper {
 public:
  EnvSyncWrapper(std::unique_ptr<TaskEnv> env, CurriculumService& service,
                 int env_id, bool dual = false,
                 bool force_step_updates = false);

  Observation reset();
  StepResult step(int action);

  /// Flushes anything still buffered; call once a worker stops mid-stream.
  void finish();

  TaskEnv& env() { return *env_; }
  const TaskAssignment& assignment() const { return assignment_; }
  int env_id() const { return env_id_; }
  std::uint64_t assignments_consumed() const { return consumed_; }

 private:
  const EncodedTask& env_task(const EncodedTask& task) const;
  bool sending_steps() const;
  void flush_steps();
  void flush_outbox();

  std::unique_ptr<TaskEnv> env_;
  CurriculumService& service_;
  int env_id_;
  bool dual_;
  bool force_step_updates_;

  TaskAssignment assignment_;
  bool has_assignment_ = false;
  EncodedTask episode_task_;
  std::vector<StepRecord> step_batch_;
  std::vector<UpdateMessage> outbox_;
  std::uint64_t consumed_ = 0;
};

}  // namespace curricula
