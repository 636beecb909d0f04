#include "curricula/learner/trajectory.hpp"

#include "curricula/errors.hpp"

namespace curricula {

void Trajectory::validate() const {
  const auto t = rewards.size();
  if (t == 0) throw EmptyTrajectoryError("trajectory has no steps");
  if (values.size() != t + 1)
    throw Error("trajectory needs T + 1 value estimates");
  if (dones.size() != t) throw Error("trajectory dones length mismatch");
  if (!states.empty() && (states.size() != t || actions.size() != t))
    throw Error("trajectory state/action length mismatch");
}

std::vector<double> td_errors(const Trajectory& traj) {
  traj.validate();
  const auto t_max = traj.rewards.size();
  std::vector<double> deltas(t_max);
  for (std::size_t t = 0; t < t_max; ++t) {
    const double mask = traj.dones[t] ? 0.0 : 1.0;
    deltas[t] = traj.rewards[t] + traj.gamma * traj.values[t + 1] * mask -
                traj.values[t];
  }
  return deltas;
}

std::vector<double> gae_advantages(const Trajectory& traj) {
  const auto deltas = td_errors(traj);
  std::vector<double> adv(deltas.size());
  double carry = 0.0;
  for (std::size_t t = deltas.size(); t-- > 0;) {
    const double mask = traj.dones[t] ? 0.0 : 1.0;
    carry = deltas[t] + traj.gamma * traj.lambda * mask * carry;
    adv[t] = carry;
  }
  return adv;
}

}  // namespace curricula
