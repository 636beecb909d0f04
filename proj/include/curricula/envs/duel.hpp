#pragma once

#include <array>

#include "curricula/envs/task_env.hpp"
#include "curricula/rng.hpp"

namespace curricula {

struct DuelConfig {
  int rounds = 10;
  std::int64_t seed_count = 8;
  double bias = 1.5;    // payoff boost for the seed's favored action
  double noise = 0.25;  // antisymmetric per-seed perturbation scale
};

/// Zero-sum payoff matrix for one duel seed: biased rock-paper-scissors with
/// one favored action (seed mod 3) plus a small antisymmetric perturbation,
/// so M[i][j] == -M[j][i] always holds.
std::array<std::array<double, 3>, 3> duel_payoffs(std::int64_t seed,
                                                  const DuelConfig& cfg);

/// Stateless 3-action policy table with one logit row per round. Snapshots
/// for the opponent store are the raw parameter bytes.
struct DuelPolicy {
  std::vector<double> logits;  // rounds x 3
  int rounds = 10;

  static DuelPolicy uniform(int rounds);
  int act(int round, Rng& rng) const;
  int act_greedy(int round) const;
  std::string serialize() const;
  static DuelPolicy deserialize(const std::string& bytes);
};

/// Plays one full duel and returns player a's total payoff (player b gets the
/// negation). Greedy mode is deterministic and exercises the antisymmetry
/// property; stochastic mode draws both players' actions from role-specific
/// streams derived from `seed`.
double duel_play(const DuelPolicy& a, const DuelPolicy& b, std::int64_t seed,
                 const DuelConfig& cfg = {}, bool greedy = false);

/// Repeated matrix game against a stored opponent policy. The task selects
/// the payoff seed; the opponent is set by the learner between episodes
/// (default: uniform random play).
class DuelGame : public TaskEnv {
 public:
  explicit DuelGame(DuelConfig cfg = {});

  const TaskSpace& task_space() const override { return space_; }
  const EncodedTask& current_task() const override { return task_; }
  Observation reset(std::optional<EncodedTask> new_task = {}) override;
  StepResult step(int action) override;
  void change_task(const EncodedTask& new_task) override;
  double task_completion() const override;
  int action_count() const override { return 3; }
  int state_count() const override;
  int state_id() const override;
  std::int64_t episode_steps() const override { return round_; }
  double episode_return() const override { return return_; }
  std::string render_text() const override;
  void seed(std::uint64_t s) override { rng_.seed(s); }

  void set_opponent(DuelPolicy policy);
  void set_opponent_bytes(const std::string& bytes);
  void set_opponent_uniform();
  const DuelConfig& config() const { return cfg_; }

 private:
  DuelConfig cfg_;
  TaskSpace space_;
  EncodedTask task_;
  std::array<std::array<double, 3>, 3> payoff_;
  DuelPolicy opponent_;
  int round_ = 0;
  double return_ = 0.0;
  Rng rng_;
};

}  // namespace curricula
