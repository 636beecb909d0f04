#pragma once

#include "curricula/curriculum.hpp"

namespace curricula {

/// Always returns the same task.
class Constant : public Curriculum {
 public:
  Constant(TaskSpace space, EncodedTask task);

  std::vector<TaskChoice> sample_choices(int k) override;
  SampleDistribution sample_distribution() const override;

  const EncodedTask& task() const { return task_; }

 private:
  EncodedTask task_;
};

}  // namespace curricula
