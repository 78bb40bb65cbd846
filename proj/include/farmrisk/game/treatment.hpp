#pragma once

#include <array>
#include <cstdint>
#include <string_view>

namespace farmrisk {

// The five binary treatment factors. The enumerator value is the bit
// position in Treatment::index().
enum class Factor : std::uint8_t {
  kAvgBiosecurity = 0,
  kBiosecurityUncertainty = 1,
  kContagionRate = 2,
  kDiseaseUncertainty = 3,
  kMessaging = 4,
};

inline constexpr int kFactorCount = 5;
inline constexpr int kTreatmentCount = 32;

inline constexpr std::array<Factor, kFactorCount> kAllFactors = {
    Factor::kAvgBiosecurity, Factor::kBiosecurityUncertainty, Factor::kContagionRate,
    Factor::kDiseaseUncertainty, Factor::kMessaging};

enum class FactorLevel : std::uint8_t { kLow = 0, kHigh = 1 };
enum class Messaging : std::uint8_t { kVerbal = 0, kGauge = 1 };

std::string_view factor_name(Factor f);
// "low"/"high", or "verbal"/"gauge" for messaging.
std::string_view level_name(Factor f, int level);

struct Treatment {
  FactorLevel avg_biosecurity = FactorLevel::kLow;
  FactorLevel biosecurity_uncertainty = FactorLevel::kLow;
  FactorLevel contagion_rate = FactorLevel::kLow;
  FactorLevel disease_uncertainty = FactorLevel::kLow;
  Messaging messaging = Messaging::kVerbal;

  // Bit i holds the level of Factor(i).
  [[nodiscard]] int index() const;
  // 0 or 1 for the given factor.
  [[nodiscard]] int level(Factor f) const;

  static Treatment from_index(int index);

  friend bool operator==(const Treatment&, const Treatment&) = default;
};

}  // namespace farmrisk
