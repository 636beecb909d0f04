#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace curricula {

/// Running metrics a stopping condition is evaluated against. `trailing_return`
/// is the mean episodic return over the trailing window and is only present
/// once the window is full.
struct StageMetrics {
  std::int64_t steps = 0;
  std::int64_t episodes = 0;
  std::int64_t tasks = 0;  // completed tasks (progress reached 1.0)
  std::optional<double> trailing_return;
};

/// Boolean expression over stage metrics, e.g. "return>=1.0&&episodes>=1000".
/// "&&" binds tighter than "||"; whitespace is ignored.
struct StoppingCondition {
  enum class Metric { steps, episodes, tasks, episodic_return };
  enum class Cmp { lt, le, gt, ge, eq };

  struct Atom {
    Metric metric;
    Cmp cmp;
    double threshold;
    bool operator==(const Atom&) const = default;
  };

  // Disjunction of conjunctions, which is what the grammar can produce.
  std::vector<std::vector<Atom>> clauses;

  bool evaluate(const StageMetrics& m) const;
  std::string render() const;

  bool operator==(const StoppingCondition&) const = default;
};

/// Parses the stopping-condition grammar. Throws ParseError with the
/// character position of the first offending token.
StoppingCondition parse_condition(const std::string& text);

/// Accumulates metrics from curriculum updates for condition evaluation.
/// Steps are counted from episode lengths at episode boundaries, so the
/// tracker behaves identically whether or not per-step traffic flows.
class MetricTracker {
 public:
  explicit MetricTracker(std::size_t return_window = 1000);

  void on_episode(double episodic_return, std::int64_t length);
  void on_task_progress(double progress);
  void reset();

  StageMetrics snapshot() const;

 private:
  std::size_t window_;
  std::vector<double> recent_returns_;  // ring buffer
  std::size_t next_ = 0;
  bool full_ = false;
  double window_sum_ = 0.0;
  StageMetrics metrics_;
};

}  // namespace curricula
