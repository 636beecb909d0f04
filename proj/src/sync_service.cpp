#include "curricula/sync/service.hpp"

#include "curricula/errors.hpp"

namespace curricula {

CurriculumService::CurriculumService(std::shared_ptr<Curriculum> curriculum,
                                     int workers, SyncConfig cfg)
    : curriculum_(std::move(curriculum)), cfg_(cfg), updates_(&signal_) {
  if (!curriculum_) throw ConfigError("service needs a curriculum");
  if (workers < 1) throw ConfigError("service needs at least one worker");
  cfg_.validate();
  queues_.reserve(static_cast<std::size_t>(workers));
  for (int i = 0; i < workers; ++i)
    queues_.push_back(std::make_unique<TaskQueue>());
  step_updates_enabled_.store(curriculum_->requires_step_updates());
  {
    std::lock_guard lock(curriculum_mutex_);
    refill_locked();
  }
}

CurriculumService::~CurriculumService() {
  if (!shut_down_) shutdown();
}

void CurriculumService::start() {
  if (!cfg_.threaded || running_.load()) return;
  running_.store(true);
  service_thread_ = std::thread([this] { service_loop(); });
}

void CurriculumService::service_loop() {
  while (!stopping_.load()) {
    signal_.wait();
    // skip the sweep when a starving worker is already pumping; holding the
    // lock from a sleepy thread invites priority convoys on small machines
    if (curriculum_mutex_.try_lock()) {
      pump_locked();
      curriculum_mutex_.unlock();
    }
  }
}

void CurriculumService::pump() {
  // drain under the curriculum lock; concurrent pumps then keep arrival order
  std::lock_guard lock(curriculum_mutex_);
  pump_locked();
}

void CurriculumService::pump_locked() {
  updates_.drain_into(pump_scratch_);
  for (auto& msg : pump_scratch_) apply(std::move(msg));
  pump_scratch_.clear();
  step_updates_enabled_.store(curriculum_->requires_step_updates());
  if (!stopping_.load()) refill_locked();
}

void CurriculumService::apply(UpdateMessage&& msg) {
  ++updates_applied_;
  if (auto* batch = std::get_if<StepBatch>(&msg)) {
    if (!curriculum_->requires_step_updates()) {
      ++dropped_step_batches_;  // processed: deliberately ignored
      return;
    }
    for (const auto& rec : batch->steps) {
      curriculum_->update_on_step(
          {rec.reward, rec.done, rec.task, batch->env_id});
    }
    return;
  }
  if (auto* episode = std::get_if<EpisodeRecord>(&msg)) {
    curriculum_->update_on_episode(*episode);
    applied_episodes_.fetch_add(1);
    return;
  }
  if (auto* progress = std::get_if<ProgressUpdate>(&msg)) {
    curriculum_->update_task_progress(progress->task, progress->progress);
    return;
  }
  curriculum_->update_on_demand(std::get<MetricBatch>(msg));
}

void CurriculumService::refill_locked() {
  const auto target = static_cast<std::size_t>(cfg_.queue_depth());
  for (auto& queue : queues_) {
    while (queue->size() < target) {
      TaskChoice choice = curriculum_->sample_choices(1)[0];
      ++sampled_total_;
      TaskAssignment assignment;
      assignment.task = std::move(choice.task);
      assignment.tag = choice.tag;
      assignment.sampled_at = applied_episodes_.load();
      queue->push(std::move(assignment));
    }
  }
}

TaskAssignment CurriculumService::next_assignment(int env_id) {
  if (env_id < 0 || env_id >= workers())
    throw Error("unknown worker id " + std::to_string(env_id));
  auto& queue = *queues_[static_cast<std::size_t>(env_id)];
  while (true) {
    if (auto assignment = queue.try_pop()) return std::move(*assignment);
    if (stopping_.load() || shut_down_)
      throw Error("curriculum service is shut down");
    // pump if nobody else is; a pump in flight will refill this queue too
    if (curriculum_mutex_.try_lock()) {
      pump_locked();
      curriculum_mutex_.unlock();
    } else {
      std::this_thread::yield();
    }
  }
}

void CurriculumService::send_updates(std::vector<UpdateMessage> batch) {
  updates_.push_drain(batch);
}

void CurriculumService::send_updates_reusing(std::vector<UpdateMessage>& batch) {
  updates_.push_drain(batch);
}

void CurriculumService::update_on_demand(MetricBatch batch) {
  updates_.push_one(UpdateMessage(std::move(batch)));
  if (!cfg_.threaded) pump();
}

SampleDistribution CurriculumService::distribution_snapshot() const {
  std::lock_guard lock(curriculum_mutex_);
  return curriculum_->sample_distribution();
}

double CurriculumService::entropy_snapshot() const {
  return distribution_snapshot().entropy();
}

std::vector<std::string> CurriculumService::consumed_metrics() const {
  std::lock_guard lock(curriculum_mutex_);
  return curriculum_->consumed_metrics();
}

void CurriculumService::shutdown() {
  if (shut_down_) return;
  stopping_.store(true);
  signal_.notify();
  if (service_thread_.joinable()) service_thread_.join();
  running_.store(false);
  {
    // drain whatever the workers sent before stopping
    std::lock_guard lock(curriculum_mutex_);
    updates_.drain_into(pump_scratch_);
    for (auto& msg : pump_scratch_) apply(std::move(msg));
    pump_scratch_.clear();
    for (auto& queue : queues_) reclaimed_ += queue->reclaim();
  }
  shut_down_ = true;
}

ConservationReport CurriculumService::report() const {
  ConservationReport rep;
  rep.prefetch_remainder = reclaimed_;
  rep.sampled = sampled_total_ - reclaimed_;
  for (const auto& queue : queues_) rep.delivered += queue->delivered();
  rep.updates_sent = updates_.sent();
  rep.updates_applied = updates_applied_;
  return rep;
}

}  // namespace curricula
