#include "curricula/compare.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "curricula/errors.hpp"

namespace curricula {

RunSeries load_metrics_series(const std::filesystem::path& csv,
                              const std::string& column) {
  std::ifstream in(csv);
  if (!in) throw ConfigError("cannot open metrics file " + csv.string());
  std::string line;
  if (!std::getline(in, line))
    throw ConfigError("empty metrics file " + csv.string());

  std::vector<std::string> headers;
  {
    std::stringstream header(line);
    std::string cell;
    while (std::getline(header, cell, ',')) headers.push_back(cell);
  }
  const auto step_it = std::find(headers.begin(), headers.end(), "step");
  const auto value_it = std::find(headers.begin(), headers.end(), column);
  if (step_it == headers.end() || value_it == headers.end())
    throw ConfigError("metrics file lacks step/" + column + " columns");
  const auto step_idx = static_cast<std::size_t>(step_it - headers.begin());
  const auto value_idx = static_cast<std::size_t>(value_it - headers.begin());

  RunSeries series;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::stringstream row(line);
    std::string cell;
    std::size_t i = 0;
    double step = 0.0, value = 0.0;
    while (std::getline(row, cell, ',')) {
      if (i == step_idx) step = std::stod(cell);
      if (i == value_idx) value = std::stod(cell);
      ++i;
    }
    series.steps.push_back(step);
    series.values.push_back(value);
  }
  if (series.steps.empty())
    throw ConfigError("metrics file has no rows: " + csv.string());
  return series;
}

double interpolate_series(const RunSeries& run, double step) {
  if (step <= run.steps.front()) return run.values.front();
  if (step >= run.steps.back()) return run.values.back();
  const auto upper =
      std::upper_bound(run.steps.begin(), run.steps.end(), step);
  const auto hi = static_cast<std::size_t>(upper - run.steps.begin());
  const auto lo = hi - 1;
  const double span = run.steps[hi] - run.steps[lo];
  if (span <= 0.0) return run.values[lo];
  const double f = (step - run.steps[lo]) / span;
  return run.values[lo] + f * (run.values[hi] - run.values[lo]);
}

std::vector<CompareRow> compare_runs(const std::vector<RunSeries>& runs,
                                     int bootstrap_resamples,
                                     std::uint64_t seed) {
  if (runs.empty()) throw ConfigError("compare needs at least one run");
  // align on the coarsest grid
  std::size_t coarsest = 0;
  for (std::size_t r = 1; r < runs.size(); ++r)
    if (runs[r].steps.size() < runs[coarsest].steps.size()) coarsest = r;
  const auto& grid = runs[coarsest].steps;

  Rng rng(seed);
  std::vector<CompareRow> rows;
  rows.reserve(grid.size());
  std::vector<double> at_step(runs.size());
  std::vector<double> resampled(static_cast<std::size_t>(bootstrap_resamples));
  for (double step : grid) {
    for (std::size_t r = 0; r < runs.size(); ++r)
      at_step[r] = interpolate_series(runs[r], step);
    CompareRow row;
    row.step = step;
    double sum = 0.0;
    for (double v : at_step) sum += v;
    row.mean = sum / static_cast<double>(at_step.size());

    if (runs.size() > 1) {
      for (int b = 0; b < bootstrap_resamples; ++b) {
        double s = 0.0;
        for (std::size_t r = 0; r < at_step.size(); ++r)
          s += at_step[static_cast<std::size_t>(
              rng.uniform_int(static_cast<std::int64_t>(at_step.size())))];
        resampled[static_cast<std::size_t>(b)] =
            s / static_cast<double>(at_step.size());
      }
      std::sort(resampled.begin(), resampled.end());
      const auto lo_idx = static_cast<std::size_t>(
          0.025 * static_cast<double>(bootstrap_resamples - 1));
      const auto hi_idx = static_cast<std::size_t>(
          0.975 * static_cast<double>(bootstrap_resamples - 1));
      row.ci_lo = resampled[lo_idx];
      row.ci_hi = resampled[hi_idx];
    } else {
      row.ci_lo = row.mean;
      row.ci_hi = row.mean;
    }
    rows.push_back(row);
  }
  return rows;
}

std::string render_compare_csv(const std::vector<CompareRow>& rows,
                               bool with_ci) {
  std::string out = with_ci ? "step,mean,ci_lo,ci_hi\n" : "step,mean\n";
  char buf[160];
  for (const auto& row : rows) {
    if (with_ci) {
      std::snprintf(buf, sizeof(buf), "%.17g,%.17g,%.17g,%.17g\n", row.step,
                    row.mean, row.ci_lo, row.ci_hi);
    } else {
      std::snprintf(buf, sizeof(buf), "%.17g,%.17g\n", row.step, row.mean);
    }
    out += buf;
  }
  return out;
}

}  // namespace curricula
