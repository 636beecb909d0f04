#pragma once

#include "curricula/curriculum.hpp"

namespace curricula {

struct LpConfig {
  double ema_alpha = 0.1;      // shared by the fast and slow EMAs
  double reweight_theta = 0.1;  // p_theta
  int update_period = 25;       // evaluation interval, in learner updates

  void validate() const;
};

/// Per-task success-rate state: latest evaluated rates plus fast and slow
/// exponential moving averages. The slow EMA is an EMA of the fast one with
/// the same alpha, which yields two timescales from one hyperparameter.
struct SuccessRateTable {
  std::vector<double> p;
  std::vector<double> p_fast;
  std::vector<double> p_slow;

  explicit SuccessRateTable(std::size_t n = 0)
      : p(n, 0.0), p_fast(n, 0.0), p_slow(n, 0.0) {}
};

/// Hyperbolic reweighting x(1-theta) / (x + theta(1-2x)); fixes 0 and 1 and
/// magnifies movement at low success rates.
double lp_reweight(double x, double theta);

/// One evaluation step: advance both EMAs with `evaluated_p`, compute
/// per-task learning progress |reweight(fast) - reweight(slow)|, and
/// normalize into a distribution (max-normalized, then summed to 1; uniform
/// when every task has zero progress).
SampleDistribution lp_update(SuccessRateTable& table,
                             const std::vector<double>& evaluated_p,
                             const LpConfig& cfg);

/// Learning Progress curriculum. Consumes full success-rate vectors from the
/// evaluator via update_on_demand key "success_rates"; tasks missing from a
/// batch keep their previous rate.
class LearningProgress : public Curriculum {
 public:
  LearningProgress(TaskSpace space, LpConfig cfg = {});

  SampleDistribution sample_distribution() const override;
  std::vector<std::string> consumed_metrics() const override;
  std::optional<int> evaluation_period() const override;

  const SuccessRateTable& table() const { return table_; }
  const std::vector<double>& latest_rates() const { return table_.p; }

 protected:
  bool consume_metric(
      const std::string& key,
      const std::vector<std::pair<EncodedTask, double>>& values) override;

 private:
  LpConfig cfg_;
  SuccessRateTable table_;
  SampleDistribution dist_;
};

}  // namespace curricula
