#pragma once

#include "curricula/curriculum.hpp"

namespace curricula {

struct SflConfig {
  enum class Mode { full_distribution, top_k };

  Mode mode = Mode::full_distribution;
  std::int64_t k = 10;    // top_k only
  double mix_rho = 1.0;   // top_k only: weight on the top-k component
  int update_period = 25;

  void validate(std::int64_t task_count) const;
};

/// Learnability distribution from success rates.
/// full_distribution: proportional to p(1-p), uniform when every task scores
/// zero. top_k: the mixture rho * U_topk + (1-rho) * U_all, where U_topk is
/// uniform over the k most learnable tasks (ties to the lower index).
SampleDistribution sfl_distribution(const std::vector<double>& p,
                                    const SflConfig& cfg);

/// Sampling for Learnability. Consumes evaluator success rates via
/// update_on_demand key "success_rates".
class SamplingForLearnability : public Curriculum {
 public:
  SamplingForLearnability(TaskSpace space, SflConfig cfg = {});

  SampleDistribution sample_distribution() const override;
  std::vector<std::string> consumed_metrics() const override;
  std::optional<int> evaluation_period() const override;

  const std::vector<double>& latest_rates() const { return p_; }

 protected:
  bool consume_metric(
      const std::string& key,
      const std::vector<std::pair<EncodedTask, double>>& values) override;

 private:
  SflConfig cfg_;
  std::vector<double> p_;
  SampleDistribution dist_;
};

}  // namespace curricula
