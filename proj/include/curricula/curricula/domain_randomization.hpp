#pragma once

#include "curricula/curriculum.hpp"

namespace curricula {

/// Uniform task sampling; the no-curriculum baseline.
class DomainRandomization : public Curriculum {
 public:
  explicit DomainRandomization(TaskSpace space);

  std::vector<TaskChoice> sample_choices(int k) override;
  SampleDistribution sample_distribution() const override;
};

}  // namespace curricula
