#include "curricula/envs/success_metric.hpp"

#include <algorithm>

#include "curricula/errors.hpp"

namespace curricula {

double normalized_return(double r_min, double r_max, double r) {
  if (!(r_max > r_min)) throw ConfigError("normalized return needs r_max > r_min");
  return (r - r_min) / (r_max - r_min);
}

double clipped_success(double scale, double r) {
  if (!(scale > 0.0)) throw ConfigError("clipped success needs scale > 0");
  return std::min(std::max(r / scale, 0.0), 1.0);
}

double SuccessMetric::operator()(double r) const {
  validate();
  if (mode == Mode::normalized) return normalized_return(r_min, r_max, r);
  return clipped_success(scale, r);
}

void SuccessMetric::validate() const {
  if (mode == Mode::normalized) {
    if (!(r_max > r_min)) throw ConfigError("success metric needs r_max > r_min");
  } else if (!(scale > 0.0)) {
    throw ConfigError("success metric needs scale > 0");
  }
}

}  // namespace curricula
