#include "curricula/curricula/learning_progress.hpp"

#include <algorithm>
#include <cmath>

#include "curricula/errors.hpp"

namespace curricula {

void LpConfig::validate() const {
  if (!(ema_alpha > 0.0 && ema_alpha <= 1.0))
    throw ConfigError("lp ema_alpha must be in (0, 1]");
  if (!(reweight_theta > 0.0 && reweight_theta < 1.0))
    throw ConfigError("lp reweight_theta must be in (0, 1)");
  if (update_period < 1) throw ConfigError("lp update_period must be >= 1");
}

double lp_reweight(double x, double theta) {
  return x * (1.0 - theta) / (x + theta * (1.0 - 2.0 * x));
}

SampleDistribution lp_update(SuccessRateTable& table,
                             const std::vector<double>& evaluated_p,
                             const LpConfig& cfg) {
  cfg.validate();
  const std::size_t n = evaluated_p.size();
  if (table.p.size() != n)
    throw Error("success rate vector length mismatch");
  const double a = cfg.ema_alpha;
  std::vector<double> progress(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    const double p = evaluated_p[i];
    if (p < 0.0 || p > 1.0) throw Error("success rates must be in [0, 1]");
    table.p[i] = p;
    table.p_fast[i] = a * p + (1.0 - a) * table.p_fast[i];
    table.p_slow[i] = a * table.p_fast[i] + (1.0 - a) * table.p_slow[i];
    progress[i] = std::abs(lp_reweight(table.p_fast[i], cfg.reweight_theta) -
                           lp_reweight(table.p_slow[i], cfg.reweight_theta));
  }
  const double peak = *std::max_element(progress.begin(), progress.end());
  if (peak > 0.0)
    for (double& lp : progress) lp /= peak;
  return normalize_or_uniform(std::move(progress));
}

LearningProgress::LearningProgress(TaskSpace space, LpConfig cfg)
    : Curriculum(std::move(space)),
      cfg_(cfg),
      table_(static_cast<std::size_t>(space_.cardinality())),
      dist_(SampleDistribution::uniform(space_.cardinality())) {
  cfg_.validate();
}

SampleDistribution LearningProgress::sample_distribution() const {
  return dist_;
}

std::vector<std::string> LearningProgress::consumed_metrics() const {
  return {"success_rates"};
}

std::optional<int> LearningProgress::evaluation_period() const {
  return cfg_.update_period;
}

bool LearningProgress::consume_metric(
    const std::string& key,
    const std::vector<std::pair<EncodedTask, double>>& values) {
  if (key != "success_rates") return false;
  auto evaluated = table_.p;  // tasks absent from the batch keep their rate
  for (const auto& [task, rate] : values)
    evaluated[static_cast<std::size_t>(space_.flat_index(task))] = rate;
  dist_ = lp_update(table_, evaluated, cfg_);
  return true;
}

}  // namespace curricula
