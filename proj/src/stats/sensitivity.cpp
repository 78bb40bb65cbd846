#include "farmrisk/stats/sensitivity.hpp"

#include <cmath>
#include <string>

#include "farmrisk/metrics/rho.hpp"
#include "farmrisk/stats/descriptive.hpp"

namespace farmrisk {

std::array<double, kTreatmentCount> treatment_mean_rho(const std::vector<SessionLog>& sessions) {
  std::array<double, kTreatmentCount> sum{};
  std::array<std::size_t, kTreatmentCount> count{};
  for (const auto& s : sessions) {
    for (const auto& r : s.rounds) {
      if (!r.finished) continue;
      const int t = r.treatment.index();
      sum[static_cast<std::size_t>(t)] += rho_round(r.final_level, r.tau);
      ++count[static_cast<std::size_t>(t)];
    }
  }
  std::string missing;
  for (int t = 0; t < kTreatmentCount; ++t) {
    if (count[static_cast<std::size_t>(t)] == 0) missing += (missing.empty() ? "" : ",") + std::to_string(t);
  }
  if (!missing.empty()) throw CoverageError("no rounds for treatments " + missing);
  std::array<double, kTreatmentCount> out{};
  for (std::size_t t = 0; t < out.size(); ++t) out[t] = sum[t] / static_cast<double>(count[t]);
  return out;
}

SensitivityReport sensitivity(const std::array<double, kTreatmentCount>& means,
                              std::optional<SensitivityCondition> condition, double alpha) {
  for (double v : means) {
    if (!std::isfinite(v)) throw CoverageError("treatment mean is missing or not finite");
  }
  if (condition && (condition->level < 0 || condition->level > 1)) {
    throw ParameterError("condition level must be 0 or 1");
  }
  SensitivityReport rep;
  rep.condition = condition;
  rep.alpha = alpha;
  rep.treatment_mean_rho = means;
  for (Factor f : kAllFactors) {
    if (condition && condition->factor == f) continue;
    std::vector<double> lv[2];
    for (int t = 0; t < kTreatmentCount; ++t) {
      const Treatment tr = Treatment::from_index(t);
      if (condition && tr.level(condition->factor) != condition->level) continue;
      lv[tr.level(f)].push_back(means[static_cast<std::size_t>(t)]);
    }
    FactorTest ft;
    ft.factor = f;
    ft.n_level0 = lv[0].size();
    ft.n_level1 = lv[1].size();
    ft.mean_level0 = mean(lv[0]);
    ft.mean_level1 = mean(lv[1]);
    ft.test = mann_whitney(lv[0], lv[1]);
    ft.significant = ft.test.p_two_sided < alpha;
    rep.factors.push_back(ft);
  }
  return rep;
}

}  // namespace farmrisk
