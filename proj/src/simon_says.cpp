#include "curricula/envs/simon_says.hpp"

#include <algorithm>
#include <sstream>

#include "curricula/errors.hpp"

namespace curricula {

namespace {

const char* kChainNames[] = {"gather", "chop", "mine", "smelt", "forge"};

std::string family_name(int family, int chain_length) {
  if (chain_length <= 5) return kChainNames[family];
  return "skill" + std::to_string(family);
}

}  // namespace

SimonSaysCraft::SimonSaysCraft(SimonSaysConfig cfg)
    : cfg_(std::move(cfg)),
      space_(TaskSpace::discrete(1)),
      task_(EncodedTask::index(0)) {
  if (cfg_.chain_length < 1 || cfg_.chain_length > 16)
    throw ConfigError("chain_length must be in [1, 16]");
  if (cfg_.tiers.empty()) throw ConfigError("tiers must be nonempty");
  if (cfg_.task_limit < 1 || cfg_.episode_limit < cfg_.task_limit)
    throw ConfigError("episode_limit must cover at least one task_limit");

  std::vector<std::string> names;
  for (int f = 0; f < cfg_.chain_length; ++f) {
    for (int tier : cfg_.tiers) {
      names.push_back(family_name(f, cfg_.chain_length) + ":" +
                      std::to_string(tier));
      meta_.push_back({f, tier, true});
    }
  }
  possible_count_ = static_cast<int>(names.size());
  for (int g = 0; g < cfg_.impossible_families; ++g) {
    char buf[16];
    std::snprintf(buf, sizeof(buf), "relic%02d", g);
    for (int tier : cfg_.tiers) {
      names.push_back(std::string(buf) + ":" + std::to_string(tier));
      meta_.push_back({-1, tier, false});
    }
  }
  max_tier_ = *std::max_element(cfg_.tiers.begin(), cfg_.tiers.end());
  space_ = TaskSpace::discrete(std::move(names));
  current_ = meta_[0];
}

Observation SimonSaysCraft::reset(std::optional<EncodedTask> new_task) {
  if (new_task) change_task(*new_task);
  skills_done_ = 0;
  completions_ = 0;
  task_steps_ = 0;
  steps_ = 0;
  return_ = 0.0;
  tasks_completed_ = 0;
  awaiting_task_ = false;
  return observe();
}

void SimonSaysCraft::change_task(const EncodedTask& new_task) {
  if (!space_.contains(new_task))
    throw OutOfRangeError("task outside the simon-says space");
  task_ = new_task;
  current_ = meta_[static_cast<std::size_t>(new_task.as_index())];
  completions_ = 0;
  task_steps_ = 0;
  awaiting_task_ = false;
  // skills_done_ persists: mid-episode swaps keep non-task state
}

StepResult SimonSaysCraft::step(int action) {
  if (action < 0 || action > cfg_.chain_length)
    throw OutOfRangeError("invalid simon-says action");
  if (awaiting_task_) change_task(space_.sample());

  ++steps_;
  ++task_steps_;

  if (action < cfg_.chain_length) {
    const unsigned prereqs = (1u << action) - 1u;
    const bool eligible = (skills_done_ & prereqs) == prereqs;
    const bool effective =
        eligible && (cfg_.skill_success_prob >= 1.0 ||
                     fallback_rng_.uniform() < cfg_.skill_success_prob);
    if (effective) {
      skills_done_ |= 1u << action;
      if (current_.possible && action == current_.family) ++completions_;
    }
  }

  StepResult res;
  if (current_.possible && completions_ >= current_.tier) {
    res.reward = 1.0;
    res.info.task_complete = true;
    res.info.task_progress = 1.0;
    res.info.needs_new_task = true;
    ++tasks_completed_;
    awaiting_task_ = true;
  } else if (task_steps_ >= cfg_.task_limit) {
    res.reward = -1.0;
    res.info.task_failed = true;
    res.info.task_progress = task_completion();
    res.info.needs_new_task = true;
    awaiting_task_ = true;
  }
  return_ += res.reward;
  res.done = steps_ >= cfg_.episode_limit;
  if (res.done) res.info.needs_new_task = false;
  res.obs = observe();
  return res;
}

double SimonSaysCraft::task_completion() const {
  if (!current_.possible) return 0.0;
  return std::min(1.0, static_cast<double>(completions_) /
                           static_cast<double>(current_.tier));
}

int SimonSaysCraft::state_count() const {
  return static_cast<int>(meta_.size()) * (1 << cfg_.chain_length) *
         (max_tier_ + 1);
}

int SimonSaysCraft::state_id() const {
  const int task_flat = static_cast<int>(task_.as_index());
  const int progress = std::min(completions_, max_tier_);
  return (task_flat * (1 << cfg_.chain_length) +
          static_cast<int>(skills_done_)) *
             (max_tier_ + 1) +
         progress;
}

bool SimonSaysCraft::task_flagged_impossible(const EncodedTask& task) const {
  if (!space_.contains(task)) return false;
  return !meta_[static_cast<std::size_t>(task.as_index())].possible;
}

Observation SimonSaysCraft::observe() const {
  Observation obs;
  obs.reserve(4 + static_cast<std::size_t>(cfg_.chain_length));
  obs.push_back(current_.possible
                    ? static_cast<double>(current_.family) /
                          static_cast<double>(cfg_.chain_length)
                    : 1.0);
  obs.push_back(static_cast<double>(current_.tier) /
                static_cast<double>(max_tier_));
  obs.push_back(task_completion());
  obs.push_back(static_cast<double>(task_steps_) /
                static_cast<double>(cfg_.task_limit));
  for (int f = 0; f < cfg_.chain_length; ++f)
    obs.push_back((skills_done_ >> f) & 1u ? 1.0 : 0.0);
  return obs;
}

std::string SimonSaysCraft::render_text() const {
  std::ostringstream out;
  out << "task=" << space_.decode(task_).to_string()
      << " progress=" << completions_ << "/" << current_.tier
      << " task_steps=" << task_steps_ << " skills=";
  for (int f = 0; f < cfg_.chain_length; ++f)
    out << (((skills_done_ >> f) & 1u) ? '1' : '0');
  out << " steps=" << steps_ << " return=" << return_;
  return out.str();
}

}  // namespace curricula
