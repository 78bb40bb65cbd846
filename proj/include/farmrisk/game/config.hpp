#pragma once

#include <array>
#include <filesystem>

#include <json.hpp>

#include "farmrisk/game/treatment.hpp"

namespace farmrisk {

// Per-pair per-turn transmission p_ij = C * exp(-d_ij / distance_scale) * s(b_i),
// combined over infected farms as a complement product.
struct InfectionModelParams {
  double rate_low = 0.08;
  double rate_high = 0.25;
  // Defaults to 0.2 x the diagonal of the default 16:9 field.
  double distance_scale = 0.2 * 1.1473474844178637;
  // s(None), s(Low), s(Medium), s(High).
  std::array<double, 4> modifiers = {1.0, 0.7, 0.45, 0.25};

  void validate() const;
};

enum class RoundAccounting {
  // score = endowment - cost*beta - (infected ? penalty : 0)
  kDeductPenalty,
  // Infected rounds also forfeit the endowment: score = -cost*beta - penalty.
  kForfeitEndowment,
};

struct GameConfig {
  double width = 1.0;
  double height = 9.0 / 16.0;
  int farm_count = 50;
  int endowment = 25000;
  int invest_cost = 1000;
  int infection_penalty = 25000;
  int sim_dollars_per_usd = 50000;
  InfectionModelParams infection;
  // Categorical over None..High for NPC farms, keyed by avg_biosecurity.
  std::array<double, 4> npc_levels_low = {0.4, 0.35, 0.2, 0.05};
  std::array<double, 4> npc_levels_high = {0.05, 0.2, 0.35, 0.4};
  // Share of NPC farms with hidden information, keyed by the uncertainty level.
  double mask_fraction_low = 0.1;
  double mask_fraction_high = 0.6;
  bool npc_spread = true;
  RoundAccounting accounting = RoundAccounting::kDeductPenalty;

  void validate() const;

  [[nodiscard]] int npc_count() const { return farm_count - 1; }
  // floor(fraction * npc_count) for the given uncertainty level.
  [[nodiscard]] int hidden_count(FactorLevel uncertainty) const;
  [[nodiscard]] double contagion_rate(const Treatment& t) const;
  [[nodiscard]] int round_score(int beta, bool infected) const;
};

void to_json(nlohmann::json& j, const GameConfig& c);
// Missing keys keep their defaults; the result is validated.
void from_json(const nlohmann::json& j, GameConfig& c);

GameConfig load_game_config(const std::filesystem::path& path);

}  // namespace farmrisk
