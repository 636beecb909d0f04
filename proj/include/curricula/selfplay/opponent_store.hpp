#pragma once

#include <cstdint>
#include <deque>
#include <filesystem>
#include <mutex>
#include <shared_mutex>
#include <string>
#include <vector>

namespace curricula {

/// A stored policy snapshot plus a ring buffer of recent game outcomes from
/// the learner's perspective (win = 1, draw = 0.5, loss = 0).
struct OpponentRecord {
  int opponent_id = 0;
  std::string snapshot;
  std::deque<double> outcomes;  // bounded by the store's memory
  std::int64_t created_step = 0;
};

/// Snapshot store for self-play opponents. Ids are dense from 0. Snapshots
/// are opaque byte strings; when a directory is configured they are persisted
/// content-addressed (SHA-256 file names) under a JSON manifest, written via
/// rename so concurrent readers never observe partial files. One writer and
/// many readers are supported.
class OpponentStore {
 public:
  explicit OpponentStore(std::filesystem::path dir = {}, int memory = 128);

  /// Adds a snapshot and returns its id (= previous count).
  int add(std::string snapshot, std::int64_t created_step = 0);

  /// Snapshot bytes for an opponent. Throws UnknownOpponentError.
  std::string snapshot(int opponent_id) const;

  /// Records one game outcome against an opponent, mapped from the learner's
  /// episodic return: > 0 win, = 0 draw, < 0 loss.
  void record_outcome(int opponent_id, double learner_return);

  /// Smoothed learner win-rate (wins + s) / (games + 2s) over the ring
  /// buffer; 0.5 before any games.
  double winrate(int opponent_id, double smoothing) const;

  int size() const;
  int memory() const { return memory_; }
  std::int64_t games(int opponent_id) const;

  /// Reloads ids and snapshot files from an existing manifest.
  static std::shared_ptr<OpponentStore> open(const std::filesystem::path& dir,
                                             int memory = 128);

 private:
  void persist(const OpponentRecord& rec);
  void check_id(int opponent_id) const;

  std::filesystem::path dir_;
  int memory_;
  mutable std::shared_mutex mutex_;
  std::vector<OpponentRecord> records_;
};

/// Hex SHA-256 of a byte string (content addressing for snapshot files).
std::string sha256_hex(const std::string& bytes);

}  // namespace curricula
