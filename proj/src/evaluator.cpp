#include "curricula/learner/evaluator.hpp"

namespace curricula {

double evaluate_task(TabularPolicy& policy, TaskEnv& env,
                     const EncodedTask& task, const EvalConfig& cfg, Rng& rng) {
  env.reset(task);
  int steps = 0;
  while (true) {
    const int state = env.state_id();
    const int action =
        cfg.stochastic ? policy.act(state, rng) : policy.act_greedy(state);
    const auto res = env.step(action);
    ++steps;
    // a single-task probe ends as soon as the assigned task resolves
    if (res.done || res.info.task_complete || res.info.task_failed) break;
    if (cfg.max_steps > 0 && steps >= cfg.max_steps) break;
  }
  if (cfg.use_return_metric) return cfg.scalar_metric(env.episode_return());
  return env.task_completion() >= 1.0 ? 1.0 : 0.0;
}

std::vector<double> evaluate(TabularPolicy& policy, TaskEnv& env,
                             const EvalConfig& cfg) {
  const auto& space = env.task_space();
  const auto n = space.cardinality();
  std::vector<double> rates(static_cast<std::size_t>(n), 0.0);
  Rng rng(cfg.seed);
  for (std::int64_t i = 0; i < n; ++i) {
    const auto task = space.from_flat(i);
    if (cfg.skip_impossible && env.task_flagged_impossible(task)) continue;
    double sum = 0.0;
    for (int e = 0; e < cfg.episodes_per_task; ++e)
      sum += evaluate_task(policy, env, task, cfg, rng);
    rates[static_cast<std::size_t>(i)] =
        sum / static_cast<double>(cfg.episodes_per_task);
  }
  return rates;
}

}  // namespace curricula
