#pragma once

#include "farmrisk/common/rng.hpp"

namespace farmrisk {

// Round decision time: median a * t^-k seconds for rounds t >= 2, round 1
// inflated, multiplicative lognormal noise, then a signed group offset.
struct LatencyModel {
  double a = 4.3;                  // seconds
  double k = 0.33;                 // decay exponent
  double round1_inflation = 2.0;
  double lognormal_sd = 0.0;
  double group_offset_ms = 0.0;

  void validate() const;
  // Noise-free value in ms, without the offset.
  [[nodiscard]] double curve_ms(int round_index) const;
};

// Always consumes exactly one normal draw so streams stay aligned.
double sample_latency(const LatencyModel& model, int round_index, Rng& rng);

}  // namespace farmrisk
