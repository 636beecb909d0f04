#include "curricula/selfplay/strategies.hpp"

#include <cmath>

#include "curricula/errors.hpp"

namespace curricula {

void PfspConfig::validate() const {
  if (hard_exponent < 0.0) throw ConfigError("pfsp exponent must be >= 0");
  if (!(smoothing > 0.0)) throw ConfigError("pfsp smoothing must be > 0");
  if (memory < 1) throw ConfigError("pfsp memory must be >= 1");
}

AgentCurriculum::AgentCurriculum(std::shared_ptr<OpponentStore> store)
    : store_(std::move(store)) {
  if (!store_) throw ConfigError("agent curriculum needs an opponent store");
}

int AgentCurriculum::update_agent(std::string snapshot,
                                  std::int64_t created_step) {
  return store_->add(std::move(snapshot), created_step);
}

std::string AgentCurriculum::get_opponent(int opponent_id) const {
  return store_->snapshot(opponent_id);
}

void AgentCurriculum::update_winrate(int opponent_id, double learner_return) {
  if (opponent_id == kLiveOpponent) return;  // mirror games carry no signal
  store_->record_outcome(opponent_id, learner_return);
}

SampleDistribution SelfPlay::opponent_distribution() const {
  return SampleDistribution{{1.0}};
}

int FictitiousSelfPlay::sample_opponent(Rng& rng) {
  const int n = store_->size();
  if (n == 0) throw EmptyStoreError("fsp has no stored opponents");
  return static_cast<int>(rng.uniform_int(n));
}

SampleDistribution FictitiousSelfPlay::opponent_distribution() const {
  const int n = store_->size();
  if (n == 0) throw EmptyStoreError("fsp has no stored opponents");
  return SampleDistribution::uniform(n);
}

PrioritizedFictitiousSelfPlay::PrioritizedFictitiousSelfPlay(
    std::shared_ptr<OpponentStore> store, PfspConfig cfg)
    : AgentCurriculum(std::move(store)), cfg_(cfg) {
  cfg_.validate();
}

int PrioritizedFictitiousSelfPlay::sample_opponent(Rng& rng) {
  return static_cast<int>(opponent_distribution().sample_index(rng));
}

SampleDistribution PrioritizedFictitiousSelfPlay::opponent_distribution()
    const {
  const int n = store_->size();
  if (n == 0) throw EmptyStoreError("pfsp has no stored opponents");
  std::vector<double> weights(static_cast<std::size_t>(n));
  for (int id = 0; id < n; ++id) {
    const double w = store_->winrate(id, cfg_.smoothing);
    weights[static_cast<std::size_t>(id)] =
        std::pow(1.0 - w, cfg_.hard_exponent);
  }
  return normalize_or_uniform(std::move(weights));
}

}  // namespace curricula
