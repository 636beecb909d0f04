#pragma once

#include <memory>

#include "curricula/distribution.hpp"
#include "curricula/selfplay/opponent_store.hpp"

namespace curricula {

/// Sentinel opponent id meaning "the live policy" (plain self-play).
inline constexpr int kLiveOpponent = -1;

struct PfspConfig {
  double hard_exponent = 2.0;  // c in (1 - w)^c
  double smoothing = 0.01;     // s in (wins + s) / (games + 2s)
  int memory = 128;

  void validate() const;
};

/// Opponent-side curriculum: samples opponent ids from a snapshot store.
class AgentCurriculum {
 public:
  explicit AgentCurriculum(std::shared_ptr<OpponentStore> store);
  virtual ~AgentCurriculum() = default;

  virtual int sample_opponent(Rng& rng) = 0;

  /// Distribution over stored opponent ids (a single entry for plain SP).
  virtual SampleDistribution opponent_distribution() const = 0;

  int update_agent(std::string snapshot, std::int64_t created_step = 0);
  std::string get_opponent(int opponent_id) const;
  virtual void update_winrate(int opponent_id, double learner_return);

  OpponentStore& store() { return *store_; }
  const OpponentStore& store() const { return *store_; }

 protected:
  std::shared_ptr<OpponentStore> store_;
};

/// Always plays the live policy.
class SelfPlay : public AgentCurriculum {
 public:
  using AgentCurriculum::AgentCurriculum;
  int sample_opponent(Rng&) override { return kLiveOpponent; }
  SampleDistribution opponent_distribution() const override;
};

/// Uniform over stored snapshots.
class FictitiousSelfPlay : public AgentCurriculum {
 public:
  using AgentCurriculum::AgentCurriculum;
  int sample_opponent(Rng& rng) override;
  SampleDistribution opponent_distribution() const override;
};

/// Weighted toward opponents the learner loses to: weight (1 - w)^c on the
/// smoothed learner win-rate w. Opponents without games sit at w = 0.5.
class PrioritizedFictitiousSelfPlay : public AgentCurriculum {
 public:
  PrioritizedFictitiousSelfPlay(std::shared_ptr<OpponentStore> store,
                                PfspConfig cfg = {});
  int sample_opponent(Rng& rng) override;
  SampleDistribution opponent_distribution() const override;
  const PfspConfig& config() const { return cfg_; }

 private:
  PfspConfig cfg_;
};

}  // namespace curricula
