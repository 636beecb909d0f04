#pragma once

#include <functional>

#include "curricula/envs/success_metric.hpp"
#include "curricula/envs/task_env.hpp"
#include "curricula/learner/tabular_policy.hpp"

namespace curricula {

struct EvalConfig {
  int episodes_per_task = 4;
  bool stochastic = false;       // greedy-deterministic by default
  bool skip_impossible = true;   // flagged tasks get success 0 without rollout
  int max_steps = 0;             // 0: run until the env reports done
  bool use_return_metric = false;  // score by scalar_metric(return) instead of
                                   // binary task completion
  SuccessMetric scalar_metric{SuccessMetric::Mode::clipped, 0.0, 1.0, 1.0};
  std::uint64_t seed = 9001;
};

/// Runs the policy on one task and reports success in [0, 1]: the task
/// completion when it is binary-reachable, otherwise the scalar metric of
/// the episodic return.
double evaluate_task(TabularPolicy& policy, TaskEnv& env,
                     const EncodedTask& task, const EvalConfig& cfg, Rng& rng);

/// Success rate per task over the whole task space, averaging
/// episodes_per_task rollouts each.
std::vector<double> evaluate(TabularPolicy& policy, TaskEnv& env,
                             const EvalConfig& cfg);

}  // namespace curricula
