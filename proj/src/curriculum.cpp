#include "curricula/curriculum.hpp"

#include "curricula/errors.hpp"

namespace curricula {

Curriculum::Curriculum(TaskSpace space) : space_(std::move(space)) {}

std::vector<EncodedTask> Curriculum::sample(int k) {
  auto choices = sample_choices(k);
  std::vector<EncodedTask> out;
  out.reserve(choices.size());
  for (auto& c : choices) out.push_back(std::move(c.task));
  return out;
}

std::vector<TaskChoice> Curriculum::sample_choices(int k) {
  if (k < 1) throw Error("sample needs k >= 1");
  const auto dist = sample_distribution();
  std::vector<TaskChoice> out;
  out.reserve(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i)
    out.push_back({sample_from(dist), SampleTag::none});
  return out;
}

void Curriculum::update_on_demand(const MetricBatch& batch) {
  for (const auto& [key, values] : batch.entries) {
    if (!consume_metric(key, values)) ++unknown_metrics_;
  }
}

bool Curriculum::consume_metric(
    const std::string&, const std::vector<std::pair<EncodedTask, double>>&) {
  return false;
}

EncodedTask Curriculum::sample_from(const SampleDistribution& dist) {
  return space_.from_flat(dist.sample_index(rng_));
}

void Curriculum::seed(std::uint64_t s) {
  rng_.seed(s);
  space_.seed(rng_.fork_seed());
}

}  // namespace curricula
