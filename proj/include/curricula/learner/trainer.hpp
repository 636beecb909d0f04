#pragma once

#include <filesystem>

#include "curricula/config.hpp"
#include "curricula/sync/messages.hpp"

namespace curricula {

struct TrainResult {
  double final_mean_return = 0.0;   // mean over the trailing 100 episodes
  double final_success_rate = 0.0;  // mean of the final full-space evaluation
  std::vector<double> final_success_rates;
  SampleDistribution final_distribution;
  std::string curriculum_type;
  ConservationReport report;
  std::filesystem::path metrics_csv;
  std::filesystem::path eval_jsonl;
  std::filesystem::path summary_json;
  std::filesystem::path checkpoint;
};

/// Runs one seed of an experiment: episodes execute on the learner thread
/// against synchronized environment wrappers (round-robin over `workers`
/// wrappers), feedback flows through the curriculum service, the evaluator
/// fires on its cadence, and metrics land under `out_dir`.
///
/// With sync.threaded the service applies updates on its own thread;
/// otherwise everything runs in-process and the run is bit-deterministic.
TrainResult run_training(const ExperimentConfig& cfg, std::uint64_t seed,
                         const std::filesystem::path& out_dir);

}  // namespace curricula
