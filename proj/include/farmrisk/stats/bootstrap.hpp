#pragma once

#include <cstdint>
#include <span>

namespace farmrisk {

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
};

// Percentile bootstrap of the median. Resample b draws from
// derive_seed(seed, b). The interval always contains the sample median.
Interval bootstrap_median_ci(std::span<const double> values, double level = 0.95, int resamples = 1000,
                             std::uint64_t seed = 0);

}  // namespace farmrisk
