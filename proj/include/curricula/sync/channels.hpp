#pragma once

#include <atomic>
#include <chrono>
#include <condition_variable>
#include <deque>
#include <mutex>
#include <optional>

#include "curricula/sync/messages.hpp"

namespace curricula {

/// Wakeup used by the service thread; notified on update pushes and on
/// assignment consumption so refills happen promptly. Notifications coalesce
/// through an atomic flag, so bursts cost one wake.
class ServiceSignal {
 public:
  void notify() {
    if (pending_.exchange(true, std::memory_order_release)) return;
    std::lock_guard lock(mutex_);
    cv_.notify_one();
  }

  /// Waits until notified (or the timeout elapses) and clears the flag.
  void wait() {
    std::unique_lock lock(mutex_);
    cv_.wait_for(lock, std::chrono::milliseconds(250),
                 [&] { return pending_.load(std::memory_order_acquire); });
    pending_.store(false, std::memory_order_release);
  }

 private:
  std::atomic<bool> pending_{false};
  std::mutex mutex_;
  std::condition_variable cv_;
};

/// Many-producer single-consumer channel carrying update messages to the
/// curriculum service. Counts every message pushed. The service signal only
/// fires once the backlog crosses a threshold; routine traffic is drained by
/// worker self-pumps and the service's periodic sweep.
class UpdateChannel {
 public:
  explicit UpdateChannel(ServiceSignal* signal = nullptr,
                         std::size_t notify_threshold = 256)
      : signal_(signal), notify_threshold_(notify_threshold) {}

  void push(std::vector<UpdateMessage> batch);
  /// Moves the batch's elements out and clears it, keeping its capacity for
  /// reuse by the caller.
  void push_drain(std::vector<UpdateMessage>& batch);
  void push_one(UpdateMessage msg);

  /// Moves every pending message into `out` (cleared first), arrival order.
  void drain_into(std::vector<UpdateMessage>& out);

  std::uint64_t sent() const;
  bool empty() const;

 private:
  ServiceSignal* signal_;
  std::size_t notify_threshold_;
  mutable std::mutex mutex_;
  std::deque<UpdateMessage> queue_;
  std::uint64_t sent_ = 0;
};

/// Single-producer single-consumer assignment queue for one worker.
/// FIFO; sequence numbers are assigned on push and strictly increase.
/// Consumers never block here: an empty queue sends them back to pump the
/// service instead.
class TaskQueue {
 public:
  void push(TaskAssignment assignment);

  /// Non-blocking pop; counts delivery on success.
  std::optional<TaskAssignment> try_pop();

  std::size_t size() const;
  std::uint64_t delivered() const;
  std::uint64_t next_sequence() const;

  /// Empties the queue at shutdown; returns how many assignments were never
  /// delivered.
  std::uint64_t reclaim();

 private:
  mutable std::mutex mutex_;
  std::deque<TaskAssignment> queue_;
  std::uint64_t sequence_ = 0;
  std::uint64_t delivered_ = 0;
};

}  // namespace curricula
