#include "curricula/dual_curriculum.hpp"

#include "curricula/errors.hpp"

namespace curricula {

DualCurriculum::DualCurriculum(std::shared_ptr<Curriculum> task_curriculum,
                               std::shared_ptr<AgentCurriculum> agent_curriculum)
    : Curriculum(task_curriculum ? task_curriculum->space()
                                 : throw ConfigError("dual needs a task curriculum")),
      task_(std::move(task_curriculum)),
      agent_(std::move(agent_curriculum)) {
  if (!agent_) throw ConfigError("dual needs an agent curriculum");
}

std::pair<EncodedTask, int> DualCurriculum::split(const EncodedTask& joint) {
  const auto& parts = joint.as_composite();
  if (parts.size() != 2)
    throw OutOfRangeError("joint task must have [task, opponent] components");
  return {parts[0], static_cast<int>(parts[1].as_index())};
}

std::vector<std::pair<EncodedTask, int>> DualCurriculum::dual_sample(int k) {
  auto choices = sample_choices(k);
  std::vector<std::pair<EncodedTask, int>> out;
  out.reserve(choices.size());
  for (auto& c : choices) out.push_back(split(c.task));
  return out;
}

std::vector<TaskChoice> DualCurriculum::sample_choices(int k) {
  auto tasks = task_->sample_choices(k);
  std::vector<TaskChoice> out;
  out.reserve(tasks.size());
  for (auto& t : tasks) {
    const int opponent = agent_->sample_opponent(rng_);
    out.push_back({EncodedTask::composite(
                       {std::move(t.task), EncodedTask::index(opponent)}),
                   t.tag});
  }
  return out;
}

SampleDistribution DualCurriculum::sample_distribution() const {
  const auto task_dist = task_->sample_distribution();
  const auto opp_dist = agent_->opponent_distribution();
  std::vector<double> joint;
  joint.reserve(task_dist.probs.size() * opp_dist.probs.size());
  for (double pt : task_dist.probs)
    for (double po : opp_dist.probs) joint.push_back(pt * po);
  return SampleDistribution{std::move(joint)};
}

void DualCurriculum::update_on_step(const StepUpdate& s) {
  if (!task_->requires_step_updates()) return;
  StepUpdate routed = s;
  if (s.task.is_composite()) routed.task = split(s.task).first;
  task_->update_on_step(routed);
}

void DualCurriculum::update_on_episode(const EpisodeRecord& rec) {
  auto [task, opponent] = split(rec.task);
  EpisodeRecord routed = rec;
  routed.task = std::move(task);
  task_->update_on_episode(routed);
  agent_->update_winrate(opponent, rec.episodic_return);
}

void DualCurriculum::update_task_progress(const EncodedTask& task,
                                          double progress) {
  task_->update_task_progress(
      task.is_composite() ? split(task).first : task, progress);
}

bool DualCurriculum::requires_step_updates() const {
  return task_->requires_step_updates();
}

std::vector<std::string> DualCurriculum::consumed_metrics() const {
  return task_->consumed_metrics();
}

std::optional<int> DualCurriculum::evaluation_period() const {
  return task_->evaluation_period();
}

void DualCurriculum::seed(std::uint64_t s) {
  Curriculum::seed(s);
  task_->seed(rng_.fork_seed());
}

bool DualCurriculum::consume_metric(
    const std::string& key,
    const std::vector<std::pair<EncodedTask, double>>& values) {
  MetricBatch forwarded;
  forwarded.entries[key] = values;
  const auto before = task_->unknown_metric_count();
  task_->update_on_demand(forwarded);
  return task_->unknown_metric_count() == before;
}

}  // namespace curricula
