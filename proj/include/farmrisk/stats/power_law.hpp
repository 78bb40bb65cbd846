#pragma once

#include <span>

namespace farmrisk {

struct PowerLawFit {
  double a = 0.0;
  double k = 0.0;
  // On the log-log scale.
  double r2 = 0.0;
};

// Least squares on (ln t, ln y): a = exp(intercept), k = -slope. Needs at
// least 3 points; throws DomainError on nonpositive t or y.
PowerLawFit fit_power_law(std::span<const double> t, std::span<const double> y);

}  // namespace farmrisk
