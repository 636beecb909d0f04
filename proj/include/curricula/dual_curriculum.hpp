#pragma once

#include <memory>

#include "curricula/curriculum.hpp"
#include "curricula/selfplay/strategies.hpp"

namespace curricula {

/// Composes a task curriculum with an opponent curriculum so training code
/// can sample from the joint space and push one update stream.
///
/// Samples are composites [task, Index(opponent_id)], with opponent id -1
/// standing for the live policy. Episode updates route by component: the task
/// curriculum sees the task half of the record, the agent curriculum receives
/// the episodic return as a win-rate update for the opponent half.
class DualCurriculum : public Curriculum {
 public:
  DualCurriculum(std::shared_ptr<Curriculum> task_curriculum,
                 std::shared_ptr<AgentCurriculum> agent_curriculum);

  std::vector<std::pair<EncodedTask, int>> dual_sample(int k);

  std::vector<TaskChoice> sample_choices(int k) override;

  /// Outer product of the task and opponent marginals, flattened task-major.
  SampleDistribution sample_distribution() const override;

  void update_on_step(const StepUpdate& s) override;
  void update_on_episode(const EpisodeRecord& rec) override;
  void update_task_progress(const EncodedTask& task, double progress) override;
  bool requires_step_updates() const override;
  std::vector<std::string> consumed_metrics() const override;
  std::optional<int> evaluation_period() const override;
  void seed(std::uint64_t s) override;

  Curriculum& task_curriculum() { return *task_; }
  AgentCurriculum& agent_curriculum() { return *agent_; }

 protected:
  bool consume_metric(
      const std::string& key,
      const std::vector<std::pair<EncodedTask, double>>& values) override;

 private:
  static std::pair<EncodedTask, int> split(const EncodedTask& joint);

  std::shared_ptr<Curriculum> task_;
  std::shared_ptr<AgentCurriculum> agent_;
};

}  // namespace curricula
