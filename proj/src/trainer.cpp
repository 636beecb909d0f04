#include "curricula/learner/trainer.hpp"

#include <cmath>
#include <cstdio>
#include <deque>
#include <fstream>

#include "curricula/curricula/plr.hpp"
#include "curricula/envs/duel.hpp"
#include "curricula/errors.hpp"
#include "curricula/sync/env_wrapper.hpp"

namespace curricula {

namespace {

std::string fmt_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

struct EpisodeOutcome {
  Trajectory trajectory;
  EncodedTask score_task;  // task component the learner attributes scores to
  SampleTag tag = SampleTag::none;
};

DuelPolicy duel_rows(const TabularPolicy& policy, int seed, int rounds) {
  DuelPolicy extracted;
  extracted.rounds = rounds;
  extracted.logits.assign(static_cast<std::size_t>(rounds) * 3, 0.0);
  for (int round = 0; round < rounds; ++round) {
    const int state = seed * rounds + round;
    for (int a = 0; a < 3; ++a)
      extracted.logits[static_cast<std::size_t>(round) * 3 + a] =
          policy.logits()[static_cast<std::size_t>(state) * 3 + a];
  }
  return extracted;
}

void set_duel_opponent(DuelGame& duel, const TaskAssignment& assignment,
                       const TabularPolicy& policy, OpponentStore& store) {
  const auto& parts = assignment.task.as_composite();
  const int opponent = static_cast<int>(parts[1].as_index());
  const int seed = static_cast<int>(parts[0].as_index());
  // snapshots are whole tabular policies; the opponent plays its rows for
  // the current task seed (mirror play against the live policy for id -1)
  if (opponent == kLiveOpponent) {
    duel.set_opponent(duel_rows(policy, seed, duel.config().rounds));
  } else {
    const auto past = TabularPolicy::deserialize(store.snapshot(opponent));
    duel.set_opponent(duel_rows(past, seed, duel.config().rounds));
  }
}

EpisodeOutcome run_episode(TabularPolicy& policy, EnvSyncWrapper& wrapper,
                           bool dual, OpponentStore* store, Rng& action_rng) {
  EpisodeOutcome out;
  wrapper.reset();
  auto& env = wrapper.env();
  if (dual)
    set_duel_opponent(dynamic_cast<DuelGame&>(env), wrapper.assignment(),
                      policy, *store);
  out.tag = wrapper.assignment().tag;
  out.score_task = dual ? wrapper.assignment().task.as_composite()[0]
                        : wrapper.assignment().task;
  auto& traj = out.trajectory;
  traj.task = out.score_task;
  traj.gamma = policy.config().gamma;
  traj.lambda = policy.config().lambda;
  while (true) {
    const int state = env.state_id();
    const int action = policy.act(state, action_rng);
    traj.states.push_back(state);
    traj.actions.push_back(action);
    traj.values.push_back(policy.value(state));
    const auto res = wrapper.step(action);
    traj.rewards.push_back(res.reward);
    // mid-episode task swaps end a credit-assignment segment: without the
    // cut, the next task's value leaks into this task's advantages
    traj.dones.push_back(res.done || res.info.needs_new_task);
    if (res.done) {
      traj.values.push_back(policy.value(env.state_id()));
      break;
    }
  }
  return out;
}

}  // namespace

TrainResult run_training(const ExperimentConfig& cfg, std::uint64_t seed,
                         const std::filesystem::path& out_dir) {
  std::filesystem::create_directories(out_dir);

  auto built = make_curriculum(cfg.curriculum, make_env(cfg.env)->task_space(),
                               out_dir);
  built.curriculum->seed(seed * 0x2545f4914f6cdd1dULL + 1);

  const bool duel_env = cfg.env.at("type").get<std::string>() == "duel";
  if (built.dual && !duel_env)
    throw ConfigError("dual curricula need the duel environment");

  auto eval_env = make_env(cfg.env);
  eval_env->seed(seed * 977 + 3);

  TabularPolicy policy(eval_env->state_count(), eval_env->action_count(),
                       cfg.learner.core);
  Rng action_rng(seed * 0x9e3779b97f4a7c15ULL + 2);

  // opponent curricula sample from the store as soon as the service
  // prefetches, so the initial snapshot has to land first
  if (built.dual && built.agent->store().size() == 0)
    built.agent->update_agent(policy.serialize(), 0);

  CurriculumService service(built.curriculum, cfg.workers, cfg.sync);
  service.start();

  std::vector<std::unique_ptr<EnvSyncWrapper>> wrappers;
  for (int w = 0; w < cfg.workers; ++w) {
    auto env = make_env(cfg.env);
    env->seed(seed * 131 + static_cast<std::uint64_t>(w) + 17);
    wrappers.push_back(std::make_unique<EnvSyncWrapper>(std::move(env), service,
                                                        w, built.dual));
  }

  const auto consumed = service.consumed_metrics();
  const bool wants_scores =
      std::find(consumed.begin(), consumed.end(), "value_l1_score") !=
      consumed.end();
  const bool wants_rates =
      std::find(consumed.begin(), consumed.end(), "success_rates") !=
      consumed.end();
  int eval_period = cfg.learner.eval_period;
  if (eval_period <= 0)
    eval_period = built.curriculum->evaluation_period().value_or(0);

  EvalConfig eval_cfg = cfg.learner.eval;
  eval_cfg.seed = seed * 7919 + 5;

  TrainResult result;
  result.curriculum_type = cfg.curriculum.at("type").get<std::string>();
  result.metrics_csv = out_dir / "metrics.csv";
  result.eval_jsonl = out_dir / "eval.jsonl";
  result.summary_json = out_dir / "summary.json";
  result.checkpoint = out_dir / "policy.bin";

  std::ofstream metrics(result.metrics_csv);
  metrics << "step,episode,task,return,length,curriculum_entropy\n";
  std::ofstream evals(result.eval_jsonl);

  std::deque<double> trailing_returns;
  std::uint64_t total_steps = 0;

  const auto send_rates = [&](const std::vector<double>& rates) {
    MetricBatch batch;
    auto& entry = batch.entries["success_rates"];
    const auto& space = wrappers[0]->env().task_space();
    entry.reserve(rates.size());
    for (std::size_t i = 0; i < rates.size(); ++i)
      entry.emplace_back(space.from_flat(static_cast<std::int64_t>(i)),
                         rates[i]);
    service.update_on_demand(std::move(batch));
  };

  for (std::int64_t episode = 1; episode <= cfg.total_episodes; ++episode) {
    auto& wrapper =
        *wrappers[static_cast<std::size_t>((episode - 1) % cfg.workers)];

    if (built.dual && cfg.learner.checkpoint_interval > 0 &&
        episode % cfg.learner.checkpoint_interval == 0) {
      built.agent->update_agent(policy.serialize(),
                                static_cast<std::int64_t>(total_steps));
    }

    auto outcome =
        run_episode(policy, wrapper, built.dual,
                    built.agent ? &built.agent->store() : nullptr, action_rng);

    const bool skip_update =
        built.robust_plr && outcome.tag == SampleTag::explore;
    if (!skip_update) policy.apply_episode(outcome.trajectory);

    if (wants_scores) {
      const double score =
          value_l1_score(td_errors(outcome.trajectory),
                         outcome.trajectory.gamma, outcome.trajectory.lambda);
      MetricBatch batch;
      batch.entries["value_l1_score"].emplace_back(outcome.score_task, score);
      service.update_on_demand(std::move(batch));
    }

    const auto length = outcome.trajectory.rewards.size();
    total_steps += length;
    double episode_return = 0.0;
    for (double r : outcome.trajectory.rewards) episode_return += r;
    trailing_returns.push_back(episode_return);
    if (trailing_returns.size() > 100) trailing_returns.pop_front();

    double entropy = std::nan("");
    try {
      entropy = service.entropy_snapshot();
    } catch (const NotEnumerableError&) {
    }
    metrics << total_steps << "," << episode << ","
            << wrapper.env().task_space().decode(outcome.score_task).to_string()
            << "," << fmt_double(episode_return) << "," << length << ","
            << fmt_double(entropy) << "\n";

    if (eval_period > 0 && episode % eval_period == 0) {
      const auto rates = evaluate(policy, *eval_env, eval_cfg);
      if (wants_rates) send_rates(rates);
      nlohmann::json row;
      row["step"] = total_steps;
      row["episode"] = episode;
      row["success_rates"] = rates;
      try {
        row["distribution"] = service.distribution_snapshot().probs;
      } catch (const NotEnumerableError&) {
        row["distribution"] = nlohmann::json::array();
      }
      evals << row.dump() << "\n";
    }
  }

  for (auto& wrapper : wrappers) wrapper->finish();

  result.final_success_rates = evaluate(policy, *eval_env, eval_cfg);
  double rate_sum = 0.0;
  for (double r : result.final_success_rates) rate_sum += r;
  result.final_success_rate =
      result.final_success_rates.empty()
          ? 0.0
          : rate_sum / static_cast<double>(result.final_success_rates.size());

  double ret_sum = 0.0;
  for (double r : trailing_returns) ret_sum += r;
  result.final_mean_return =
      trailing_returns.empty()
          ? 0.0
          : ret_sum / static_cast<double>(trailing_returns.size());

  try {
    result.final_distribution = service.distribution_snapshot();
  } catch (const NotEnumerableError&) {
  }

  service.shutdown();
  result.report = service.report();

  {
    std::ofstream checkpoint(result.checkpoint, std::ios::binary);
    const auto bytes = policy.serialize();
    checkpoint.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  }
  {
    nlohmann::json summary;
    summary["final_mean_return"] = result.final_mean_return;
    summary["final_success_rate"] = result.final_success_rate;
    summary["curriculum"] = result.curriculum_type;
    summary["seed"] = seed;
    summary["episodes"] = cfg.total_episodes;
    summary["conservation"] = {
        {"sampled", result.report.sampled},
        {"delivered", result.report.delivered},
        {"prefetch_remainder", result.report.prefetch_remainder},
        {"updates_sent", result.report.updates_sent},
        {"updates_applied", result.report.updates_applied}};
    std::ofstream out(result.summary_json);
    out << summary.dump(2) << "\n";
  }
  return result;
}

}  // namespace curricula
