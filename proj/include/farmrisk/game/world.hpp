#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "farmrisk/game/config.hpp"
#include "farmrisk/game/treatment.hpp"
#include "farmrisk/game/types.hpp"

namespace farmrisk {

struct Farm {
  int id = 0;
  double x = 0.0;
  double y = 0.0;
  BiosecurityLevel biosecurity = BiosecurityLevel::kNone;
  bool infected = false;
  bool biosecurity_visible = true;
  bool infection_visible = true;
  bool player_controlled = false;

  friend bool operator==(const Farm&, const Farm&) = default;
};

struct RoundState {
  int round_index = 1;
  int turn = 1;
  std::vector<Farm> farms;
  Treatment treatment;
  int budget = 0;
  bool terminated = false;
  bool infected_player = false;
  int player_id = 0;

  [[nodiscard]] const Farm& player() const { return farms[static_cast<std::size_t>(player_id)]; }
  [[nodiscard]] Farm& player() { return farms[static_cast<std::size_t>(player_id)]; }

  friend bool operator==(const RoundState&, const RoundState&) = default;
};

double farm_distance(const Farm& a, const Farm& b);

// C * exp(-d/lambda) * s(b), the per-turn chance that one infected farm
// infects the susceptible one.
double pair_transmission(double contagion, double distance_kernel, double modifier);

// 1 - prod_j (1 - C exp(-d_ij/lambda) s(b_i)) over the infected farms.
double infection_probability(const Farm& susceptible, std::span<const Farm> infected,
                             const Treatment& treatment, const InfectionModelParams& params);

// Places farms, draws NPC biosecurity, seeds one infected NPC and draws the
// hidden sets. Deterministic in (seed, treatment, config).
RoundState generate_world(std::uint64_t seed, const Treatment& treatment, const GameConfig& config,
                          int round_index = 1);

}  // namespace farmrisk
