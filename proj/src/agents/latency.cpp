#include "farmrisk/agents/latency.hpp"

#include <algorithm>
#include <cmath>

#include "farmrisk/common/error.hpp"

namespace farmrisk {

void LatencyModel::validate() const {
  if (!(a > 0.0)) throw ParameterError("latency a must be > 0");
  if (!(k >= 0.0)) throw ParameterError("latency k must be >= 0");
  if (!(round1_inflation >= 1.0)) throw ParameterError("round1_inflation must be >= 1");
  if (!(lognormal_sd >= 0.0)) throw ParameterError("lognormal_sd must be >= 0");
}

double LatencyModel::curve_ms(int round_index) const {
  const double base = a * std::pow(static_cast<double>(round_index), -k) * 1000.0;
  return round_index == 1 ? base * round1_inflation : base;
}

double sample_latency(const LatencyModel& model, int round_index, Rng& rng) {
  if (round_index < 1) throw ParameterError("round_index must be >= 1");
  const double z = standard_normal(rng);
  const double noisy = model.curve_ms(round_index) * std::exp(model.lognormal_sd * z);
  return std::max(0.0, noisy + model.group_offset_ms);
}

}  // namespace farmrisk
