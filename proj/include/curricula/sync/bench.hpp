#pragma once

#include <functional>
#include <memory>

#include "curricula/sync/env_wrapper.hpp"

namespace curricula {

using EnvFactory = std::function<std::unique_ptr<TaskEnv>()>;
using CurriculumFactory = std::function<std::shared_ptr<Curriculum>()>;

struct BenchResult {
  double baseline_s = 0.0;  // median over repetitions
  double episodic_s = 0.0;
  double step_s = 0.0;
  // medians of the per-repetition ratios; each repetition runs its three
  // modes back to back, so machine-speed drift between repetitions cancels
  double episodic_overhead = 0.0;
  double step_overhead = 0.0;
  std::uint64_t episodes = 0;

  double episodic_overhead_pct() const { return 100.0 * episodic_overhead; }
  double step_overhead_pct() const { return 100.0 * step_overhead; }
};

/// Wall-clock comparison of (a) a raw environment loop, (b) the synchronized
/// loop with episodic-only updates, and (c) the synchronized loop with
/// forced step updates, each driving `workers` threads for
/// `episodes_per_worker` random-policy episodes.
BenchResult bench_overhead(const EnvFactory& make_env,
                           const CurriculumFactory& make_curriculum,
                           int workers, int episodes_per_worker);

}  // namespace curricula
