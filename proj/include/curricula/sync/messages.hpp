#pragma once

#include <cstdint>
#include <variant>
#include <vector>

#include "curricula/curriculum.hpp"

namespace curricula {

struct StepRecord {
  double reward = 0.0;
  bool done = false;
  EncodedTask task;
};

/// Per-step records batched to keep channel traffic low.
struct StepBatch {
  int env_id = -1;
  std::vector<StepRecord> steps;
};

struct ProgressUpdate {
  EncodedTask task;
  double progress = 0.0;
};

/// Everything an environment (or the learner) can send to the curriculum.
using UpdateMessage =
    std::variant<StepBatch, EpisodeRecord, ProgressUpdate, MetricBatch>;

/// A task handed to one environment worker. Sequence numbers increase
/// strictly per queue; sampled_at records the curriculum's episode counter
/// at sampling time, which is what the staleness tests inspect.
struct TaskAssignment {
  EncodedTask task;
  SampleTag tag = SampleTag::none;
  std::uint64_t sequence_number = 0;
  std::uint64_t sampled_at = 0;
};

struct SyncConfig {
  int step_batch_size = 64;
  int prefetch = 1;  // B: assignments buffered per worker
  int delay = 0;     // D: extra mandatory queue depth (artificial staleness)
  bool threaded = false;

  void validate() const;
  int queue_depth() const { return prefetch + delay; }
};

/// Exactly-once accounting after a quiescent shutdown. Assignments still
/// buffered when the service stopped are reported separately so
/// sampled == delivered captures the conservation identity.
struct ConservationReport {
  std::uint64_t sampled = 0;    // consumed-side samples (total minus remainder)
  std::uint64_t delivered = 0;  // assignments popped by workers
  std::uint64_t prefetch_remainder = 0;
  std::uint64_t updates_sent = 0;
  std::uint64_t updates_applied = 0;

  bool conserved() const {
    return sampled == delivered && updates_sent == updates_applied;
  }
};

}  // namespace curricula
