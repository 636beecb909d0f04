#pragma once

#include <memory>

#include "curricula/curriculum.hpp"
#include "curricula/curricula/stopping_condition.hpp"

namespace curricula {

struct CurriculumStage {
  std::shared_ptr<Curriculum> inner;
  StoppingCondition condition;
};

/// Meta-curriculum over a list of stages. Sampling and updates delegate to
/// the active stage; the stage advances exactly once when its stopping
/// condition evaluates true on that stage's own metrics, and the final stage
/// persists forever. Stage transitions reset the metric tracker, so each
/// stage is judged on its own data.
class SequentialCurriculum : public Curriculum {
 public:
  SequentialCurriculum(TaskSpace space, std::vector<CurriculumStage> stages,
                       std::size_t return_window = 1000);

  std::vector<TaskChoice> sample_choices(int k) override;
  SampleDistribution sample_distribution() const override;
  void update_on_step(const StepUpdate& s) override;
  void update_on_episode(const EpisodeRecord& rec) override;
  void update_task_progress(const EncodedTask& task, double progress) override;
  bool requires_step_updates() const override;
  std::vector<std::string> consumed_metrics() const override;
  void seed(std::uint64_t s) override;

  std::size_t stage_index() const { return stage_; }
  StageMetrics stage_metrics() const { return tracker_.snapshot(); }

 protected:
  bool consume_metric(
      const std::string& key,
      const std::vector<std::pair<EncodedTask, double>>& values) override;

 private:
  void maybe_advance();

  std::vector<CurriculumStage> stages_;
  MetricTracker tracker_;
  std::size_t stage_ = 0;
};

}  // namespace curricula
