#include "curricula/sync/channels.hpp"

#include "curricula/errors.hpp"

namespace curricula {

void SyncConfig::validate() const {
  if (step_batch_size < 1) throw ConfigError("step_batch_size must be >= 1");
  if (prefetch < 1) throw ConfigError("prefetch must be >= 1");
  if (delay < 0) throw ConfigError("delay must be >= 0");
}

void UpdateChannel::push(std::vector<UpdateMessage> batch) {
  push_drain(batch);
}

void UpdateChannel::push_drain(std::vector<UpdateMessage>& batch) {
  if (batch.empty()) return;
  std::size_t backlog = 0;
  {
    std::lock_guard lock(mutex_);
    for (auto& msg : batch) queue_.push_back(std::move(msg));
    sent_ += batch.size();
    backlog = queue_.size();
  }
  batch.clear();
  if (signal_ && backlog >= notify_threshold_) signal_->notify();
}

void UpdateChannel::push_one(UpdateMessage msg) {
  std::size_t backlog = 0;
  {
    std::lock_guard lock(mutex_);
    queue_.push_back(std::move(msg));
    ++sent_;
    backlog = queue_.size();
  }
  if (signal_ && backlog >= notify_threshold_) signal_->notify();
}

void UpdateChannel::drain_into(std::vector<UpdateMessage>& out) {
  out.clear();
  std::lock_guard lock(mutex_);
  out.insert(out.end(), std::make_move_iterator(queue_.begin()),
             std::make_move_iterator(queue_.end()));
  queue_.clear();
}

std::uint64_t UpdateChannel::sent() const {
  std::lock_guard lock(mutex_);
  return sent_;
}

bool UpdateChannel::empty() const {
  std::lock_guard lock(mutex_);
  return queue_.empty();
}

void TaskQueue::push(TaskAssignment assignment) {
  std::lock_guard lock(mutex_);
  assignment.sequence_number = sequence_++;
  queue_.push_back(std::move(assignment));
}

std::optional<TaskAssignment> TaskQueue::try_pop() {
  std::lock_guard lock(mutex_);
  if (queue_.empty()) return std::nullopt;
  auto out = std::make_optional(std::move(queue_.front()));
  queue_.pop_front();
  ++delivered_;
  return out;
}

std::size_t TaskQueue::size() const {
  std::lock_guard lock(mutex_);
  return queue_.size();
}

std::uint64_t TaskQueue::delivered() const {
  std::lock_guard lock(mutex_);
  return delivered_;
}

std::uint64_t TaskQueue::next_sequence() const {
  std::lock_guard lock(mutex_);
  return sequence_;
}

std::uint64_t TaskQueue::reclaim() {
  std::lock_guard lock(mutex_);
  const auto n = static_cast<std::uint64_t>(queue_.size());
  queue_.clear();
  return n;
}

}  // namespace curricula
