#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "curricula/rng.hpp"

namespace curricula {

/// One run's (step, value) series pulled from a metrics CSV column.
struct RunSeries {
  std::vector<double> steps;
  std::vector<double> values;
};

RunSeries load_metrics_series(const std::filesystem::path& csv,
                              const std::string& column = "return");

struct CompareRow {
  double step = 0.0;
  double mean = 0.0;
  double ci_lo = 0.0;
  double ci_hi = 0.0;
};

/// Aligns runs on the coarsest step grid (the run with the fewest rows),
/// linearly interpolating the others, and reports the mean with a 95%
/// percentile bootstrap confidence interval over runs at each step.
std::vector<CompareRow> compare_runs(const std::vector<RunSeries>& runs,
                                     int bootstrap_resamples = 1000,
                                     std::uint64_t seed = 17);

/// Value of a series at an arbitrary step: linear interpolation between
/// bracketing points, clamped at the ends.
double interpolate_series(const RunSeries& run, double step);

/// CSV emission; the ci columns are omitted for a single run.
std::string render_compare_csv(const std::vector<CompareRow>& rows,
                               bool with_ci);

}  // namespace curricula
