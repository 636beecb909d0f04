#pragma once

#include <functional>
#include <memory>
#include <string>

#include "curricula/curriculum.hpp"
#include "curricula/curricula/sfl.hpp"

namespace curricula {

/// Partitions tasks into interesting (true) and uninteresting (false) given
/// their labels and current success rates. The returned mask has one entry
/// per task.
using InterestingnessOracle = std::function<std::vector<bool>(
    const std::vector<std::string>& labels, const std::vector<double>& p)>;

/// Zeroes masked-out entries and renormalizes. If the surviving mass is zero
/// the result is uniform over the masked-in tasks; an all-false mask falls
/// back to uniform over every task.
SampleDistribution omni_filter(const SampleDistribution& base,
                               const std::vector<bool>& mask);

/// Rule-based stand-in for an LLM judge. A task is uninteresting when it is
/// already mastered (p >= 0.95) or when another task in the same skill family
/// with an equal or higher repetition tier has a strictly higher success
/// rate. Labels follow the "family:tier" convention of the toy environments;
/// labels without a tier suffix form their own family at tier 0. Impossible
/// tasks (p stuck at 0) are never dominated, so this oracle keeps them
/// interesting; ruling those out takes a semantic judge.
std::vector<bool> default_interestingness(const std::vector<std::string>& labels,
                                          const std::vector<double>& p);

/// Oracle backed by a child process speaking line-delimited JSON on its
/// stdin/stdout: {"tasks":[...],"success_rates":[...]} -> {"mask":[...]}.
class SubprocessOracle {
 public:
  explicit SubprocessOracle(std::vector<std::string> argv);
  ~SubprocessOracle();

  SubprocessOracle(const SubprocessOracle&) = delete;
  SubprocessOracle& operator=(const SubprocessOracle&) = delete;

  std::vector<bool> operator()(const std::vector<std::string>& labels,
                               const std::vector<double>& p);

 private:
  int child_pid_ = -1;
  int to_child_ = -1;
  int from_child_ = -1;
};

/// Learnability-style filter composition on top of sfl_distribution.
SampleDistribution sfl_with_omni(const std::vector<std::string>& labels,
                                 const std::vector<double>& p,
                                 const SflConfig& cfg,
                                 const InterestingnessOracle& oracle);

/// Interestingness filtering over a base evaluation-driven curriculum (LP by
/// default, SFL optionally). Forwards "success_rates" batches to the base,
/// then masks the base distribution with the oracle's verdicts.
class OmniCurriculum : public Curriculum {
 public:
  OmniCurriculum(TaskSpace space, std::unique_ptr<Curriculum> base,
                 InterestingnessOracle oracle = default_interestingness);

  SampleDistribution sample_distribution() const override;
  std::vector<std::string> consumed_metrics() const override;
  std::optional<int> evaluation_period() const override;
  void seed(std::uint64_t s) override;

  const std::vector<bool>& last_mask() const { return mask_; }

 protected:
  bool consume_metric(
      const std::string& key,
      const std::vector<std::pair<EncodedTask, double>>& values) override;

 private:
  std::unique_ptr<Curriculum> base_;
  InterestingnessOracle oracle_;
  std::vector<std::string> labels_;
  std::vector<double> p_;
  std::vector<bool> mask_;
  SampleDistribution dist_;
};

}  // namespace curricula
