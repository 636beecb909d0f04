#pragma once

#include <cstdint>

#include "curricula/curriculum.hpp"

namespace curricula {

struct PlrConfig {
  std::int64_t buffer_size = 200;  // K
  double temperature = 0.1;        // beta
  double staleness_coefficient = 0.1;  // rho
  bool robust = false;
  bool mean_score_aggregation = false;  // latest-wins by default

  void validate() const;
};

/// Per-task replay state. `task` is the flat index within the task space.
struct PlrEntry {
  std::int64_t task = 0;
  double score = 0.0;                  // latest L1 value loss
  std::int64_t last_update_count = 0;  // global episode count at last refresh
  bool seen = false;
};

/// Replay distribution over `task_count` tasks:
///   P = (1 - rho) * P_score + rho * P_stale
/// P_score(i) is proportional to (1/rank_i)^(1/beta) with rank 1 the highest
/// score and ties broken by lower task index. P_stale(i) is proportional to
/// global_count - last_update_count(i), uniform over seen tasks when every
/// staleness is zero. Unseen tasks get probability 0. Throws NoSeenTasksError
/// when no entry is seen.
SampleDistribution plr_score_distribution(const std::vector<PlrEntry>& entries,
                                          const PlrConfig& cfg,
                                          std::int64_t global_count,
                                          std::int64_t task_count);

/// Mean absolute discounted sum of TD-errors:
///   (1/T) * sum_t | sum_{k=t}^{T-1} (gamma*lambda)^(k-t) * delta_k |
/// Throws EmptyTrajectoryError for an empty delta list.
double value_l1_score(const std::vector<double>& td_errors, double gamma,
                      double lambda);

/// Prioritized Level Replay. Scores arrive through update_on_demand under the
/// key "value_l1_score"; the global staleness counter advances once per
/// episode update. Sampling returns unseen tasks first (uniformly, tagged
/// `explore`), then draws from the replay distribution (tagged `replay`).
/// The robust flag changes nothing about sampling; it tells the learner to
/// skip gradient updates on explore episodes.
class PrioritizedLevelReplay : public Curriculum {
 public:
  PrioritizedLevelReplay(TaskSpace space, PlrConfig cfg = {});

  std::vector<TaskChoice> sample_choices(int k) override;
  SampleDistribution sample_distribution() const override;
  void update_on_episode(const EpisodeRecord& rec) override;
  std::vector<std::string> consumed_metrics() const override;

  const PlrConfig& config() const { return cfg_; }
  std::int64_t global_episode_count() const { return global_episodes_; }
  std::vector<PlrEntry> entries() const;

 protected:
  bool consume_metric(
      const std::string& key,
      const std::vector<std::pair<EncodedTask, double>>& values) override;

 private:
  void record_score(std::int64_t flat, double score);

  PlrConfig cfg_;
  std::int64_t task_count_;
  std::vector<double> score_;
  std::vector<std::int64_t> last_update_;
  std::vector<std::int64_t> score_samples_;
  std::vector<bool> seen_;      // score received at least once
  std::vector<bool> queued_;    // handed out for exploration, score pending
  std::vector<bool> in_buffer_;
  std::int64_t buffered_ = 0;
  std::int64_t unexplored_ = 0;
  std::int64_t global_episodes_ = 0;
};

}  // namespace curricula
