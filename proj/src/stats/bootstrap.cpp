#include "farmrisk/stats/bootstrap.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "farmrisk/common/rng.hpp"
#include "farmrisk/stats/descriptive.hpp"

namespace farmrisk {

Interval bootstrap_median_ci(std::span<const double> values, double level, int resamples,
                             std::uint64_t seed) {
  if (values.empty()) throw ParameterError("bootstrap of an empty sample");
  if (!(level > 0.0 && level < 1.0)) throw ParameterError("confidence level must be in (0,1)");
  if (resamples < 1) throw ParameterError("need at least one resample");
  const std::size_t n = values.size();
  std::vector<double> meds(static_cast<std::size_t>(resamples));
  std::vector<double> draw(n);
  for (int b = 0; b < resamples; ++b) {
    Rng rng = make_rng(derive_seed(seed, static_cast<std::uint64_t>(b)));
    for (auto& v : draw) v = values[uniform_below(rng, n)];
    meds[static_cast<std::size_t>(b)] = median(draw);
  }
  std::sort(meds.begin(), meds.end());
  const double alpha = 1.0 - level;
  const double bd = static_cast<double>(resamples);
  auto lo_i = static_cast<std::size_t>(std::floor(alpha / 2.0 * bd));
  auto hi_i = static_cast<std::size_t>(std::ceil((1.0 - alpha / 2.0) * bd));
  hi_i = hi_i == 0 ? 0 : hi_i - 1;
  lo_i = std::min(lo_i, meds.size() - 1);
  hi_i = std::min(hi_i, meds.size() - 1);
  const double med = median(std::vector<double>(values.begin(), values.end()));
  return {std::min(meds[lo_i], med), std::max(meds[hi_i], med)};
}

}  // namespace farmrisk
