#include "curricula/distribution.hpp"

#include <cmath>
#include <numeric>

#include "curricula/errors.hpp"

namespace curricula {

SampleDistribution SampleDistribution::uniform(std::int64_t n) {
  if (n < 1) throw EmptyTaskSpaceError("cannot build a distribution over 0 tasks");
  return SampleDistribution{
      std::vector<double>(static_cast<std::size_t>(n), 1.0 / static_cast<double>(n))};
}

void SampleDistribution::validate() const {
  if (probs.empty()) throw Error("empty sample distribution");
  double sum = 0.0;
  for (double p : probs) {
    if (!(p >= 0.0)) throw Error("negative probability in sample distribution");
    sum += p;
  }
  if (std::abs(sum - 1.0) > 1e-9)
    throw Error("sample distribution sums to " + std::to_string(sum));
}

double SampleDistribution::entropy() const {
  double h = 0.0;
  for (double p : probs)
    if (p > 0.0) h -= p * std::log(p);
  return h;
}

std::int64_t SampleDistribution::sample_index(Rng& rng) const {
  const double u = rng.uniform();
  double acc = 0.0;
  std::int64_t last_positive = -1;
  for (std::size_t i = 0; i < probs.size(); ++i) {
    if (probs[i] <= 0.0) continue;
    last_positive = static_cast<std::int64_t>(i);
    acc += probs[i];
    if (u < acc) return last_positive;
  }
  if (last_positive < 0) throw Error("cannot sample from all-zero distribution");
  return last_positive;  // u landed in the rounding gap past the final bucket
}

SampleDistribution normalize_or_uniform(std::vector<double> weights) {
  const double sum = std::accumulate(weights.begin(), weights.end(), 0.0);
  if (sum <= 0.0)
    return SampleDistribution::uniform(static_cast<std::int64_t>(weights.size()));
  for (double& w : weights) w /= sum;
  return SampleDistribution{std::move(weights)};
}

}  // namespace curricula
