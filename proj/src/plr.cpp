#include "curricula/curricula/plr.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "curricula/errors.hpp"

namespace curricula {

void PlrConfig::validate() const {
  if (buffer_size < 1) throw ConfigError("plr buffer_size must be >= 1");
  if (!(temperature > 0.0)) throw ConfigError("plr temperature must be > 0");
  if (staleness_coefficient < 0.0 || staleness_coefficient > 1.0)
    throw ConfigError("plr staleness coefficient must be in [0, 1]");
}

SampleDistribution plr_score_distribution(const std::vector<PlrEntry>& entries,
                                          const PlrConfig& cfg,
                                          std::int64_t global_count,
                                          std::int64_t task_count) {
  cfg.validate();
  std::vector<const PlrEntry*> seen;
  seen.reserve(entries.size());
  for (const auto& e : entries)
    if (e.seen) seen.push_back(&e);
  if (seen.empty()) throw NoSeenTasksError("plr has no seen tasks");

  // rank 1 = highest score, ties to the lower task index
  std::sort(seen.begin(), seen.end(), [](const PlrEntry* a, const PlrEntry* b) {
    if (a->score != b->score) return a->score > b->score;
    return a->task < b->task;
  });

  std::vector<double> probs(static_cast<std::size_t>(task_count), 0.0);

  double score_total = 0.0;
  std::vector<double> score_w(seen.size());
  for (std::size_t r = 0; r < seen.size(); ++r) {
    score_w[r] = std::pow(1.0 / static_cast<double>(r + 1), 1.0 / cfg.temperature);
    score_total += score_w[r];
  }

  double stale_total = 0.0;
  std::vector<double> stale_w(seen.size());
  for (std::size_t r = 0; r < seen.size(); ++r) {
    stale_w[r] =
        static_cast<double>(std::max<std::int64_t>(global_count - seen[r]->last_update_count, 0));
    stale_total += stale_w[r];
  }
  if (stale_total <= 0.0) {
    std::fill(stale_w.begin(), stale_w.end(), 1.0);
    stale_total = static_cast<double>(seen.size());
  }

  const double rho = cfg.staleness_coefficient;
  for (std::size_t r = 0; r < seen.size(); ++r) {
    probs[static_cast<std::size_t>(seen[r]->task)] =
        (1.0 - rho) * score_w[r] / score_total + rho * stale_w[r] / stale_total;
  }
  return SampleDistribution{std::move(probs)};
}

double value_l1_score(const std::vector<double>& td_errors, double gamma,
                      double lambda) {
  if (td_errors.empty())
    throw EmptyTrajectoryError("value_l1_score needs at least one TD-error");
  const double decay = gamma * lambda;
  double tail = 0.0;
  double total = 0.0;
  for (std::size_t t = td_errors.size(); t-- > 0;) {
    tail = td_errors[t] + decay * tail;
    total += std::abs(tail);
  }
  return total / static_cast<double>(td_errors.size());
}

PrioritizedLevelReplay::PrioritizedLevelReplay(TaskSpace space, PlrConfig cfg)
    : Curriculum(std::move(space)), cfg_(cfg) {
  cfg_.validate();
  task_count_ = space_.cardinality();
  score_.assign(static_cast<std::size_t>(task_count_), 0.0);
  last_update_.assign(static_cast<std::size_t>(task_count_), 0);
  score_samples_.assign(static_cast<std::size_t>(task_count_), 0);
  seen_.assign(static_cast<std::size_t>(task_count_), false);
  queued_.assign(static_cast<std::size_t>(task_count_), false);
  in_buffer_.assign(static_cast<std::size_t>(task_count_), false);
  unexplored_ = task_count_;
}

std::vector<TaskChoice> PrioritizedLevelReplay::sample_choices(int k) {
  if (k < 1) throw Error("sample needs k >= 1");
  std::vector<TaskChoice> out;
  out.reserve(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i) {
    if (unexplored_ > 0) {
      // uniform among tasks never handed out yet
      std::int64_t pick = rng_.uniform_int(unexplored_);
      for (std::int64_t t = 0; t < task_count_; ++t) {
        if (seen_[static_cast<std::size_t>(t)] ||
            queued_[static_cast<std::size_t>(t)])
          continue;
        if (pick-- == 0) {
          queued_[static_cast<std::size_t>(t)] = true;
          --unexplored_;
          out.push_back({space_.from_flat(t), SampleTag::explore});
          break;
        }
      }
      continue;
    }
    if (buffered_ == 0) {
      // everything handed out but no score has come back yet
      const auto flat = rng_.uniform_int(task_count_);
      out.push_back({space_.from_flat(flat), SampleTag::explore});
      continue;
    }
    out.push_back({sample_from(sample_distribution()), SampleTag::replay});
  }
  return out;
}

SampleDistribution PrioritizedLevelReplay::sample_distribution() const {
  return plr_score_distribution(entries(), cfg_, global_episodes_, task_count_);
}

std::vector<PlrEntry> PrioritizedLevelReplay::entries() const {
  std::vector<PlrEntry> out;
  out.reserve(static_cast<std::size_t>(task_count_));
  for (std::int64_t t = 0; t < task_count_; ++t) {
    const auto i = static_cast<std::size_t>(t);
    out.push_back({t, score_[i], last_update_[i], in_buffer_[i]});
  }
  return out;
}

void PrioritizedLevelReplay::update_on_episode(const EpisodeRecord&) {
  ++global_episodes_;
}

std::vector<std::string> PrioritizedLevelReplay::consumed_metrics() const {
  return {"value_l1_score"};
}

bool PrioritizedLevelReplay::consume_metric(
    const std::string& key,
    const std::vector<std::pair<EncodedTask, double>>& values) {
  if (key != "value_l1_score") return false;
  for (const auto& [task, score] : values)
    record_score(space_.flat_index(task), score);
  return true;
}

void PrioritizedLevelReplay::record_score(std::int64_t flat, double score) {
  const auto i = static_cast<std::size_t>(flat);
  if (cfg_.mean_score_aggregation && seen_[i]) {
    const auto n = static_cast<double>(++score_samples_[i]);
    score_[i] += (score - score_[i]) / n;
  } else {
    score_[i] = score;  // latest wins
    score_samples_[i] = 1;
  }
  last_update_[i] = global_episodes_;
  if (queued_[i]) {
    queued_[i] = false;
  } else if (!seen_[i]) {
    --unexplored_;  // scored without ever being handed out
  }
  seen_[i] = true;
  if (in_buffer_[i]) return;
  if (buffered_ < cfg_.buffer_size) {
    in_buffer_[i] = true;
    ++buffered_;
    return;
  }
  // full buffer: displace the lowest-score entry if the new score beats it
  std::int64_t victim = -1;
  double worst = 0.0;
  for (std::int64_t t = 0; t < task_count_; ++t) {
    const auto j = static_cast<std::size_t>(t);
    if (!in_buffer_[j]) continue;
    if (victim < 0 || score_[j] < worst) {
      victim = t;
      worst = score_[j];
    }
  }
  if (score_[i] > worst) {
    in_buffer_[static_cast<std::size_t>(victim)] = false;
    in_buffer_[i] = true;
  }
}

}  // namespace curricula
