#include "curricula/sync/env_wrapper.hpp"

#include "curricula/errors.hpp"

namespace curricula {

EnvSyncWrapper::EnvSyncWrapper(std::unique_ptr<TaskEnv> env,
                               CurriculumService& service, int env_id,
                               bool dual, bool force_step_updates)
    : env_(std::move(env)),
      service_(service),
      env_id_(env_id),
      dual_(dual),
      force_step_updates_(force_step_updates) {
  if (!env_) throw ConfigError("sync wrapper needs an environment");
}

const EncodedTask& EnvSyncWrapper::env_task(const EncodedTask& task) const {
  if (!dual_) return task;
  const auto& parts = task.as_composite();
  return parts[0];
}

bool EnvSyncWrapper::sending_steps() const {
  return force_step_updates_ || service_.step_updates_enabled();
}

Observation EnvSyncWrapper::reset() {
  flush_outbox();  // anything buffered from the finished episode goes first
  assignment_ = service_.next_assignment(env_id_);
  has_assignment_ = true;
  ++consumed_;
  episode_task_ = assignment_.task;
  step_batch_.clear();
  return env_->reset(env_task(assignment_.task));
}

StepResult EnvSyncWrapper::step(int action) {
  if (!has_assignment_) throw Error("step before reset on the sync wrapper");
  auto res = env_->step(action);

  if (sending_steps()) {
    step_batch_.push_back({res.reward, res.done, assignment_.task});
    if (static_cast<int>(step_batch_.size()) >= service_.step_batch_size())
      flush_steps();
  }

  if (res.info.needs_new_task && !res.done) {
    // the current task resolved mid-episode: report it and swap tasks
    // without resetting (Simon-Says protocol)
    outbox_.push_back(ProgressUpdate{assignment_.task, res.info.task_progress});
    assignment_ = service_.next_assignment(env_id_);
    ++consumed_;
    env_->change_task(env_task(assignment_.task));
    flush_outbox();
  }

  if (res.done) {
    flush_steps();
    outbox_.push_back(EpisodeRecord{env_->episode_return(),
                                    env_->episode_steps(), episode_task_,
                                    env_id_});
    outbox_.push_back(
        ProgressUpdate{assignment_.task, env_->task_completion()});
    flush_outbox();
  }
  return res;
}

void EnvSyncWrapper::finish() {
  flush_steps();
  flush_outbox();
}

void EnvSyncWrapper::flush_steps() {
  if (step_batch_.empty()) return;
  outbox_.push_back(StepBatch{env_id_, std::move(step_batch_)});
  step_batch_.clear();
}

void EnvSyncWrapper::flush_outbox() {
  if (outbox_.empty()) return;
  service_.send_updates_reusing(outbox_);
}

}  // namespace curricula
