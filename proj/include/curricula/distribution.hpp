#pragma once

#include <cstdint>
#include <vector>

#include "curricula/rng.hpp"

namespace curricula {

/// Normalized probability vector over the flat indices of an enumerable task
/// space. Every automatic curriculum produces one of these.
struct SampleDistribution {
  std::vector<double> probs;

  static SampleDistribution uniform(std::int64_t n);

  /// Throws Error unless entries are >= 0 and sum to 1 within 1e-9.
  void validate() const;

  /// Shannon entropy in nats; zero-probability entries contribute nothing.
  double entropy() const;

  std::int64_t sample_index(Rng& rng) const;

  bool operator==(const SampleDistribution&) const = default;
};

/// Normalizes nonnegative weights into a distribution. All-zero weights fall
/// back to uniform so callers never receive an invalid distribution.
SampleDistribution normalize_or_uniform(std::vector<double> weights);

}  // namespace curricula
