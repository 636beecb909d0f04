#include <algorithm>

#include "curricula/curricula/annealing.hpp"
#include "curricula/curricula/constant.hpp"
#include "curricula/curricula/domain_randomization.hpp"
#include "curricula/curricula/sequential.hpp"
#include "curricula/errors.hpp"

namespace curricula {

Constant::Constant(TaskSpace space, EncodedTask task)
    : Curriculum(std::move(space)), task_(std::move(task)) {
  if (!space_.contains(task_))
    throw OutOfRangeError("constant task is outside the task space");
}

std::vector<TaskChoice> Constant::sample_choices(int k) {
  if (k < 1) throw Error("sample needs k >= 1");
  return std::vector<TaskChoice>(static_cast<std::size_t>(k),
                                 {task_, SampleTag::none});
}

SampleDistribution Constant::sample_distribution() const {
  const auto n = space_.cardinality();
  std::vector<double> probs(static_cast<std::size_t>(n), 0.0);
  probs[static_cast<std::size_t>(space_.flat_index(task_))] = 1.0;
  return SampleDistribution{std::move(probs)};
}

DomainRandomization::DomainRandomization(TaskSpace space)
    : Curriculum(std::move(space)) {}

std::vector<TaskChoice> DomainRandomization::sample_choices(int k) {
  if (k < 1) throw Error("sample needs k >= 1");
  std::vector<TaskChoice> out;
  out.reserve(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i) out.push_back({space_.sample(), SampleTag::none});
  return out;
}

SampleDistribution DomainRandomization::sample_distribution() const {
  return SampleDistribution::uniform(space_.cardinality());
}

std::pair<std::vector<double>, std::vector<double>> AnnealingSchedule::bounds_at(
    std::int64_t t) const {
  const double f = std::min(1.0, static_cast<double>(std::max<std::int64_t>(t, 0)) /
                                     static_cast<double>(horizon));
  std::vector<double> lo(start_low.size()), hi(start_high.size());
  for (std::size_t i = 0; i < lo.size(); ++i) {
    lo[i] = start_low[i] + f * (end_low[i] - start_low[i]);
    hi[i] = start_high[i] + f * (end_high[i] - start_high[i]);
  }
  return {std::move(lo), std::move(hi)};
}

void AnnealingSchedule::validate() const {
  if (horizon < 1) throw ConfigError("annealing horizon must be >= 1");
  const std::size_t d = start_low.size();
  if (d == 0 || start_high.size() != d || end_low.size() != d ||
      end_high.size() != d)
    throw ConfigError("annealing bounds must share a nonzero dimension");
  for (std::size_t i = 0; i < d; ++i) {
    if (!(start_low[i] <= start_high[i]))
      throw ConfigError("annealing start range inverted");
    if (!(end_low[i] <= start_low[i] && start_high[i] <= end_high[i]))
      throw ConfigError("annealing start range must lie inside the end range");
  }
}

EncodedTask annealing_sample(const AnnealingSchedule& sched, std::int64_t t,
                             Rng& rng) {
  auto [lo, hi] = sched.bounds_at(t);
  std::vector<double> v(lo.size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = rng.uniform(lo[i], hi[i]);
  return EncodedTask::vector(std::move(v));
}

AnnealingBox::AnnealingBox(AnnealingSchedule sched)
    : Curriculum(TaskSpace::box(sched.end_low, sched.end_high)),
      sched_(std::move(sched)) {
  sched_.validate();
}

std::vector<TaskChoice> AnnealingBox::sample_choices(int k) {
  if (k < 1) throw Error("sample needs k >= 1");
  std::vector<TaskChoice> out;
  out.reserve(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i)
    out.push_back({annealing_sample(sched_, steps_, rng_), SampleTag::none});
  return out;
}

SampleDistribution AnnealingBox::sample_distribution() const {
  throw NotEnumerableError("annealing runs over a box task space");
}

void AnnealingBox::update_on_episode(const EpisodeRecord& rec) {
  steps_ += rec.length;
}

SequentialCurriculum::SequentialCurriculum(TaskSpace space,
                                           std::vector<CurriculumStage> stages,
                                           std::size_t return_window)
    : Curriculum(std::move(space)),
      stages_(std::move(stages)),
      tracker_(return_window) {
  if (stages_.empty()) throw ConfigError("sequential curriculum needs stages");
}

std::vector<TaskChoice> SequentialCurriculum::sample_choices(int k) {
  return stages_[stage_].inner->sample_choices(k);
}

SampleDistribution SequentialCurriculum::sample_distribution() const {
  return stages_[stage_].inner->sample_distribution();
}

void SequentialCurriculum::update_on_step(const StepUpdate& s) {
  if (stages_[stage_].inner->requires_step_updates())
    stages_[stage_].inner->update_on_step(s);
}

void SequentialCurriculum::update_on_episode(const EpisodeRecord& rec) {
  stages_[stage_].inner->update_on_episode(rec);
  tracker_.on_episode(rec.episodic_return, rec.length);
  maybe_advance();
}

void SequentialCurriculum::update_task_progress(const EncodedTask& task,
                                                double progress) {
  stages_[stage_].inner->update_task_progress(task, progress);
  tracker_.on_task_progress(progress);
  maybe_advance();
}

void SequentialCurriculum::maybe_advance() {
  if (stage_ + 1 >= stages_.size()) return;
  if (stages_[stage_].condition.evaluate(tracker_.snapshot())) {
    ++stage_;  // at most one advance per update
    tracker_.reset();
  }
}

bool SequentialCurriculum::requires_step_updates() const {
  return stages_[stage_].inner->requires_step_updates();
}

std::vector<std::string> SequentialCurriculum::consumed_metrics() const {
  return stages_[stage_].inner->consumed_metrics();
}

bool SequentialCurriculum::consume_metric(
    const std::string& key,
    const std::vector<std::pair<EncodedTask, double>>& values) {
  MetricBatch forwarded;
  forwarded.entries[key] = values;
  const auto before = stages_[stage_].inner->unknown_metric_count();
  stages_[stage_].inner->update_on_demand(forwarded);
  return stages_[stage_].inner->unknown_metric_count() == before;
}

void SequentialCurriculum::seed(std::uint64_t s) {
  Curriculum::seed(s);
  for (auto& stage : stages_) stage.inner->seed(rng_.fork_seed());
}

}  // namespace curricula
