#pragma once

#include <string>
#include <vector>

#include "curricula/learner/trajectory.hpp"
#include "curricula/rng.hpp"

namespace curricula {

struct LearnerConfig {
  double gamma = 0.99;
  double lambda = 0.95;
  double lr_policy = 0.2;
  double lr_value = 0.2;
  double entropy_coef = 0.01;
};

/// Softmax actor-critic over discrete state indices. Stands in for the
/// neural agents the studied curricula were paired with; keeps TD-errors
/// exact and episodes cheap.
class TabularPolicy {
 public:
  TabularPolicy(int states, int actions, LearnerConfig cfg = {});

  int act(int state, Rng& rng) const;
  int act_greedy(int state) const;  // argmax, ties to the lower action
  double value(int state) const { return values_[static_cast<std::size_t>(state)]; }

  /// One advantage-actor-critic update over a finished episode.
  void apply_episode(const Trajectory& traj);

  int states() const { return states_; }
  int actions() const { return actions_; }
  const LearnerConfig& config() const { return cfg_; }

  std::string serialize() const;
  static TabularPolicy deserialize(const std::string& bytes);

  bool operator==(const TabularPolicy& other) const {
    return states_ == other.states_ && actions_ == other.actions_ &&
           logits_ == other.logits_ && values_ == other.values_;
  }

  const std::vector<double>& logits() const { return logits_; }
  std::vector<double>& mutable_logits() { return logits_; }

 private:
  void action_probs(int state, double* out) const;

  int states_;
  int actions_;
  LearnerConfig cfg_;
  std::vector<double> logits_;  // states x actions
  std::vector<double> values_;
};

}  // namespace curricula
