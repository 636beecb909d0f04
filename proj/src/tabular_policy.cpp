#include "curricula/learner/tabular_policy.hpp"

#include <cmath>
#include <unordered_map>
#include <cstring>

#include "curricula/errors.hpp"

namespace curricula {

TabularPolicy::TabularPolicy(int states, int actions, LearnerConfig cfg)
    : states_(states), actions_(actions), cfg_(cfg) {
  if (states < 1 || actions < 1)
    throw ConfigError("policy needs at least one state and action");
  logits_.assign(static_cast<std::size_t>(states) * actions, 0.0);
  values_.assign(static_cast<std::size_t>(states), 0.0);
}

void TabularPolicy::action_probs(int state, double* out) const {
  const auto base = static_cast<std::size_t>(state) * actions_;
  double mx = logits_[base];
  for (int a = 1; a < actions_; ++a)
    mx = std::max(mx, logits_[base + static_cast<std::size_t>(a)]);
  double total = 0.0;
  for (int a = 0; a < actions_; ++a) {
    out[a] = std::exp(logits_[base + static_cast<std::size_t>(a)] - mx);
    total += out[a];
  }
  for (int a = 0; a < actions_; ++a) out[a] /= total;
}

int TabularPolicy::act(int state, Rng& rng) const {
  std::vector<double> probs(static_cast<std::size_t>(actions_));
  action_probs(state, probs.data());
  const double u = rng.uniform();
  double acc = 0.0;
  for (int a = 0; a < actions_; ++a) {
    acc += probs[static_cast<std::size_t>(a)];
    if (u < acc) return a;
  }
  return actions_ - 1;
}

int TabularPolicy::act_greedy(int state) const {
  const auto base = static_cast<std::size_t>(state) * actions_;
  int best = 0;
  for (int a = 1; a < actions_; ++a)
    if (logits_[base + static_cast<std::size_t>(a)] >
        logits_[base + static_cast<std::size_t>(best)])
      best = a;
  return best;
}

void TabularPolicy::apply_episode(const Trajectory& traj) {
  traj.validate();
  if (traj.states.empty())
    throw Error("trajectory carries no states to learn from");
  const auto advantages = gae_advantages(traj);

  // Updates are averaged per state over the episode. Grid-style episodes
  // revisit the same tabular state hundreds of times; applying every visit
  // at full step size compounds into divergence.
  std::unordered_map<int, std::size_t> slot_of;
  std::vector<int> touched;
  std::vector<double> grad;      // per touched state: actions_ entries
  std::vector<double> adv_sum;
  std::vector<int> visits;
  std::vector<double> probs(static_cast<std::size_t>(actions_));

  for (std::size_t t = 0; t < advantages.size(); ++t) {
    const int s = traj.states[t];
    const int a = traj.actions[t];
    const double adv = advantages[t];
    auto [it, fresh] = slot_of.try_emplace(s, touched.size());
    if (fresh) {
      touched.push_back(s);
      grad.insert(grad.end(), static_cast<std::size_t>(actions_), 0.0);
      adv_sum.push_back(0.0);
      visits.push_back(0);
    }
    const auto slot = it->second;
    adv_sum[slot] += adv;
    visits[slot] += 1;
    action_probs(s, probs.data());
    for (int act = 0; act < actions_; ++act) {
      const double indicator = act == a ? 1.0 : 0.0;
      grad[slot * static_cast<std::size_t>(actions_) +
           static_cast<std::size_t>(act)] +=
          adv * (indicator - probs[static_cast<std::size_t>(act)]);
    }
  }

  for (std::size_t slot = 0; slot < touched.size(); ++slot) {
    const int s = touched[slot];
    const double inv = 1.0 / static_cast<double>(visits[slot]);
    values_[static_cast<std::size_t>(s)] += cfg_.lr_value * adv_sum[slot] * inv;

    const auto base = static_cast<std::size_t>(s) * actions_;
    action_probs(s, probs.data());
    for (int act = 0; act < actions_; ++act) {
      double g = grad[slot * static_cast<std::size_t>(actions_) +
                      static_cast<std::size_t>(act)] *
                 inv;
      const double p = probs[static_cast<std::size_t>(act)];
      if (cfg_.entropy_coef > 0.0 && p > 0.0) {
        double entropy = 0.0;
        for (int b = 0; b < actions_; ++b) {
          const double q = probs[static_cast<std::size_t>(b)];
          if (q > 0.0) entropy -= q * std::log(q);
        }
        g += cfg_.entropy_coef * p * (-std::log(p) - entropy);
      }
      logits_[base + static_cast<std::size_t>(act)] += cfg_.lr_policy * g;
    }
  }
}

std::string TabularPolicy::serialize() const {
  std::string out;
  const std::int64_t header[2] = {states_, actions_};
  out.append(reinterpret_cast<const char*>(header), sizeof(header));
  out.append(reinterpret_cast<const char*>(logits_.data()),
             logits_.size() * sizeof(double));
  out.append(reinterpret_cast<const char*>(values_.data()),
             values_.size() * sizeof(double));
  return out;
}

TabularPolicy TabularPolicy::deserialize(const std::string& bytes) {
  std::int64_t header[2] = {0, 0};
  if (bytes.size() < sizeof(header)) throw Error("policy bytes are truncated");
  std::memcpy(header, bytes.data(), sizeof(header));
  const auto states = static_cast<int>(header[0]);
  const auto actions = static_cast<int>(header[1]);
  TabularPolicy policy(states, actions);
  const std::size_t n_logits = policy.logits_.size() * sizeof(double);
  const std::size_t n_values = policy.values_.size() * sizeof(double);
  if (bytes.size() != sizeof(header) + n_logits + n_values)
    throw Error("policy bytes have the wrong size");
  std::memcpy(policy.logits_.data(), bytes.data() + sizeof(header), n_logits);
  std::memcpy(policy.values_.data(), bytes.data() + sizeof(header) + n_logits,
              n_values);
  return policy;
}

}  // namespace curricula
