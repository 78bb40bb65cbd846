#include "farmrisk/stats/power_law.hpp"

#include <cmath>
#include <string>
#include <vector>

#include "farmrisk/common/error.hpp"

namespace farmrisk {

PowerLawFit fit_power_law(std::span<const double> t, std::span<const double> y) {
  if (t.size() != y.size()) throw ParameterError("power-law fit: t and y differ in length");
  if (t.size() < 3) throw ParameterError("power-law fit needs at least 3 points");
  const std::size_t n = t.size();
  std::vector<double> lx(n), ly(n);
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    if (!(t[i] > 0.0) || !(y[i] > 0.0)) {
      throw DomainError("power-law fit needs positive values, got (" + std::to_string(t[i]) + ", " +
                        std::to_string(y[i]) + ")");
    }
    lx[i] = std::log(t[i]);
    ly[i] = std::log(y[i]);
    mx += lx[i];
    my += ly[i];
  }
  mx /= static_cast<double>(n);
  my /= static_cast<double>(n);
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sxx += (lx[i] - mx) * (lx[i] - mx);
    sxy += (lx[i] - mx) * (ly[i] - my);
    syy += (ly[i] - my) * (ly[i] - my);
  }
  if (sxx == 0.0) throw DomainError("power-law fit needs at least two distinct t");
  const double slope = sxy / sxx;
  const double intercept = my - slope * mx;
  double ss_res = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double e = ly[i] - (intercept + slope * lx[i]);
    ss_res += e * e;
  }
  PowerLawFit fit;
  fit.a = std::exp(intercept);
  fit.k = -slope;
  fit.r2 = syy > 0.0 ? 1.0 - ss_res / syy : 1.0;
  return fit;
}

}  // namespace farmrisk
