#include "curricula/curricula/sfl.hpp"

#include <algorithm>
#include <numeric>

#include "curricula/errors.hpp"

namespace curricula {

void SflConfig::validate(std::int64_t task_count) const {
  if (mode == Mode::top_k) {
    if (k < 1 || k > task_count)
      throw ConfigError("sfl k must be in [1, task count]");
    if (mix_rho < 0.0 || mix_rho > 1.0)
      throw ConfigError("sfl mix_rho must be in [0, 1]");
  }
  if (update_period < 1) throw ConfigError("sfl update_period must be >= 1");
}

SampleDistribution sfl_distribution(const std::vector<double>& p,
                                    const SflConfig& cfg) {
  const auto n = static_cast<std::int64_t>(p.size());
  cfg.validate(n);
  std::vector<double> learnability(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i] < 0.0 || p[i] > 1.0)
      throw Error("success rates must be in [0, 1]");
    learnability[i] = p[i] * (1.0 - p[i]);
  }
  if (cfg.mode == SflConfig::Mode::full_distribution)
    return normalize_or_uniform(std::move(learnability));

  // top-k by learnability, ties to the lower index
  std::vector<std::int64_t> order(p.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::int64_t a, std::int64_t b) {
                     return learnability[static_cast<std::size_t>(a)] >
                            learnability[static_cast<std::size_t>(b)];
                   });
  std::vector<double> probs(p.size(),
                            (1.0 - cfg.mix_rho) / static_cast<double>(n));
  const double top_share = cfg.mix_rho / static_cast<double>(cfg.k);
  for (std::int64_t r = 0; r < cfg.k; ++r)
    probs[static_cast<std::size_t>(order[static_cast<std::size_t>(r)])] +=
        top_share;
  return SampleDistribution{std::move(probs)};
}

SamplingForLearnability::SamplingForLearnability(TaskSpace space, SflConfig cfg)
    : Curriculum(std::move(space)),
      cfg_(cfg),
      p_(static_cast<std::size_t>(space_.cardinality()), 0.0),
      dist_(SampleDistribution::uniform(space_.cardinality())) {
  cfg_.validate(space_.cardinality());
}

SampleDistribution SamplingForLearnability::sample_distribution() const {
  return dist_;
}

std::vector<std::string> SamplingForLearnability::consumed_metrics() const {
  return {"success_rates"};
}

std::optional<int> SamplingForLearnability::evaluation_period() const {
  return cfg_.update_period;
}

bool SamplingForLearnability::consume_metric(
    const std::string& key,
    const std::vector<std::pair<EncodedTask, double>>& values) {
  if (key != "success_rates") return false;
  for (const auto& [task, rate] : values)
    p_[static_cast<std::size_t>(space_.flat_index(task))] = rate;
  dist_ = sfl_distribution(p_, cfg_);
  return true;
}

}  // namespace curricula
