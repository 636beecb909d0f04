#pragma once

namespace curricula {

/// r_N = (r - r_min) / (r_max - r_min). Requires r_max > r_min.
double normalized_return(double r_min, double r_max, double r);

/// min(max(r / scale, 0), 1). Requires scale > 0.
double clipped_success(double scale, double r);

/// Maps episodic returns into [0, 1] success values, either by normalizing
/// against a known return range or by clip-scaling.
struct SuccessMetric {
  enum class Mode { normalized, clipped };
  Mode mode = Mode::clipped;
  double r_min = 0.0;
  double r_max = 1.0;
  double scale = 1.0;

  double operator()(double r) const;
  void validate() const;
};

}  // namespace curricula
