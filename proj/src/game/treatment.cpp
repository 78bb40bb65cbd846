#include "farmrisk/game/treatment.hpp"

#include <string>

#include "farmrisk/common/error.hpp"
#include "farmrisk/game/types.hpp"

namespace farmrisk {

std::string_view to_string(BiosecurityLevel level) {
  switch (level) {
    case BiosecurityLevel::kNone: return "none";
    case BiosecurityLevel::kLow: return "low";
    case BiosecurityLevel::kMedium: return "medium";
    case BiosecurityLevel::kHigh: return "high";
  }
  return "?";
}

std::optional<BiosecurityLevel> parse_biosecurity_level(std::string_view s) {
  for (int b = 0; b <= 3; ++b) {
    if (to_string(level_from_beta(b)) == s) return level_from_beta(b);
  }
  return std::nullopt;
}

std::string_view to_string(Action action) {
  return action == Action::kInvest ? "invest" : "hold";
}

std::optional<Action> parse_action(std::string_view s) {
  if (s == "invest") return Action::kInvest;
  if (s == "hold") return Action::kHold;
  return std::nullopt;
}

std::string_view factor_name(Factor f) {
  switch (f) {
    case Factor::kAvgBiosecurity: return "avg_biosecurity";
    case Factor::kBiosecurityUncertainty: return "biosecurity_uncertainty";
    case Factor::kContagionRate: return "contagion_rate";
    case Factor::kDiseaseUncertainty: return "disease_uncertainty";
    case Factor::kMessaging: return "messaging";
  }
  return "?";
}

std::string_view level_name(Factor f, int level) {
  if (f == Factor::kMessaging) return level ? "gauge" : "verbal";
  return level ? "high" : "low";
}

int Treatment::index() const {
  return static_cast<int>(avg_biosecurity) | static_cast<int>(biosecurity_uncertainty) << 1 |
         static_cast<int>(contagion_rate) << 2 | static_cast<int>(disease_uncertainty) << 3 |
         static_cast<int>(messaging) << 4;
}

int Treatment::level(Factor f) const { return (index() >> static_cast<int>(f)) & 1; }

Treatment Treatment::from_index(int index) {
  if (index < 0 || index >= kTreatmentCount) {
    throw ParameterError("treatment index out of range: " + std::to_string(index));
  }
  Treatment t;
  t.avg_biosecurity = static_cast<FactorLevel>(index & 1);
  t.biosecurity_uncertainty = static_cast<FactorLevel>((index >> 1) & 1);
  t.contagion_rate = static_cast<FactorLevel>((index >> 2) & 1);
  t.disease_uncertainty = static_cast<FactorLevel>((index >> 3) & 1);
  t.messaging = static_cast<Messaging>((index >> 4) & 1);
  return t;
}

}  // namespace farmrisk
