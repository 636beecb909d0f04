#pragma once

#include <vector>

#include "curricula/task_space.hpp"

namespace curricula {

/// One episode of learner experience. `values` holds the critic estimates
/// V(s_0)..V(s_{T-1}) plus the bootstrap V(s_T), so it is one longer than
/// rewards/dones.
struct Trajectory {
  std::vector<int> states;
  std::vector<int> actions;
  std::vector<double> rewards;
  std::vector<double> values;  // length T + 1
  std::vector<bool> dones;
  EncodedTask task;
  double gamma = 0.99;
  double lambda = 0.95;

  std::size_t length() const { return rewards.size(); }
  void validate() const;
};

/// delta_t = r_t + gamma * V(s_{t+1}) * (1 - done_t) - V(s_t)
std::vector<double> td_errors(const Trajectory& traj);

/// GAE advantages from TD-errors via the usual backward recursion
/// A_t = delta_t + gamma * lambda * (1 - done_t) * A_{t+1}.
std::vector<double> gae_advantages(const Trajectory& traj);

}  // namespace curricula
