#pragma once

#include <atomic>
#include <memory>
#include <thread>

#include "curricula/sync/channels.hpp"

namespace curricula {

/// Owns the curriculum and connects it to many environment workers: drains
/// the shared update channel, applies updates in arrival order, and keeps
/// each worker's assignment queue topped up to prefetch + delay entries.
///
/// Two execution modes share the same queues:
///  - direct (default): no threads; wrappers pump the service inline when
///    their queue runs dry, giving deterministic unit-test runs.
///  - threaded: a service thread does the steady-state pumping; a worker
///    that finds its queue empty runs one pump itself (all pumps serialize
///    on the curriculum lock) rather than blocking on the scheduler.
class CurriculumService {
 public:
  CurriculumService(std::shared_ptr<Curriculum> curriculum, int workers,
                    SyncConfig cfg = {});
  ~CurriculumService();

  CurriculumService(const CurriculumService&) = delete;
  CurriculumService& operator=(const CurriculumService&) = delete;

  void start();
  void shutdown();

  /// One drain-and-refill iteration. Direct mode calls this inline; the
  /// service thread calls it in its loop.
  void pump();

  /// Next assignment for a worker. Blocks (threaded) or pumps (direct) until
  /// one is available. Throws Error after shutdown.
  TaskAssignment next_assignment(int env_id);

  void send_updates(std::vector<UpdateMessage> batch);

  /// Same as send_updates but empties the caller's batch in place so its
  /// capacity can be reused.
  void send_updates_reusing(std::vector<UpdateMessage>& batch);

  /// Learner-side metric push, routed through the update channel so the
  /// accounting covers it.
  void update_on_demand(MetricBatch batch);

  bool step_updates_enabled() const { return step_updates_enabled_.load(); }
  int step_batch_size() const { return cfg_.step_batch_size; }
  bool threaded() const { return cfg_.threaded; }
  int workers() const { return static_cast<int>(queues_.size()); }

  std::uint64_t applied_episodes() const { return applied_episodes_.load(); }

  SampleDistribution distribution_snapshot() const;
  double entropy_snapshot() const;
  std::vector<std::string> consumed_metrics() const;

  ConservationReport report() const;

 private:
  void apply(UpdateMessage&& msg);
  void pump_locked();
  void refill_locked();
  void service_loop();

  std::shared_ptr<Curriculum> curriculum_;
  SyncConfig cfg_;
  ServiceSignal signal_;
  UpdateChannel updates_;
  std::vector<std::unique_ptr<TaskQueue>> queues_;

  mutable std::mutex curriculum_mutex_;
  std::thread service_thread_;
  std::atomic<bool> running_{false};
  std::atomic<bool> stopping_{false};
  std::atomic<bool> step_updates_enabled_{false};
  std::atomic<std::uint64_t> applied_episodes_{0};

  std::vector<UpdateMessage> pump_scratch_;  // reused across pumps
  std::uint64_t sampled_total_ = 0;
  std::uint64_t updates_applied_ = 0;
  std::uint64_t dropped_step_batches_ = 0;
  std::uint64_t reclaimed_ = 0;
  bool shut_down_ = false;
};

}  // namespace curricula
