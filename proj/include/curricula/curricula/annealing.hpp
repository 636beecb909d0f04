#pragma once

#include "curricula/curriculum.hpp"

namespace curricula {

/// Linearly expanding sampling range over a box task space.
struct AnnealingSchedule {
  std::vector<double> start_low, start_high;
  std::vector<double> end_low, end_high;
  std::int64_t horizon = 1;  // steps

  /// Bounds at step t: linear interpolation at fraction min(t/horizon, 1).
  std::pair<std::vector<double>, std::vector<double>> bounds_at(
      std::int64_t t) const;

  void validate() const;
};

/// Uniform sample from the interpolated box at step t.
EncodedTask annealing_sample(const AnnealingSchedule& sched, std::int64_t t,
                             Rng& rng);

/// Curriculum form of the schedule. Progress through the schedule is driven
/// by total environment steps, accumulated from episode lengths so the
/// curriculum needs no per-step traffic.
class AnnealingBox : public Curriculum {
 public:
  explicit AnnealingBox(AnnealingSchedule sched);

  std::vector<TaskChoice> sample_choices(int k) override;
  SampleDistribution sample_distribution() const override;
  void update_on_episode(const EpisodeRecord& rec) override;

  std::int64_t steps_elapsed() const { return steps_; }
  const AnnealingSchedule& schedule() const { return sched_; }

 private:
  AnnealingSchedule sched_;
  std::int64_t steps_ = 0;
};

}  // namespace curricula
