#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "farmrisk/common/rng.hpp"
#include "farmrisk/game/config.hpp"
#include "farmrisk/game/world.hpp"

namespace farmrisk {

struct TurnEvents {
  int turn = 0;
  Action action = Action::kHold;
  BiosecurityLevel level_after = BiosecurityLevel::kNone;
  std::vector<int> npc_infections;
  bool player_infected = false;
  bool round_over = false;
};

// What the player is allowed to see. Hidden NPC fields are std::nullopt and
// are serialized as the "hidden" marker.
struct FarmView {
  int id = 0;
  double x = 0.0;
  double y = 0.0;
  bool is_player = false;
  std::optional<BiosecurityLevel> biosecurity;
  std::optional<bool> infected;
};

struct MessagePayload {
  Messaging kind = Messaging::kVerbal;
  FactorLevel contagion_level = FactorLevel::kLow;
  // Verbal: numeric text. Gauge: fraction in [0,1].
  std::string text;
  double gauge = 0.0;
};

struct Observation {
  int round_index = 1;
  int turn = 1;
  int budget = 0;
  BiosecurityLevel player_level = BiosecurityLevel::kNone;
  bool terminated = false;
  bool player_infected = false;
  std::vector<FarmView> farms;
  MessagePayload message;
};

Observation player_view(const RoundState& state, const GameConfig& config);
nlohmann::ordered_json to_json(const Observation& obs);

// One round of play: owns the world and the spread RNG stream.
class Round {
 public:
  Round(std::uint64_t seed, const Treatment& treatment, const GameConfig& config, int round_index);

  // Applies the player's action then samples one turn of spread.
  // Throws RuleError for Invest at High and StateError once terminated.
  TurnEvents step(Action action);

  [[nodiscard]] const RoundState& state() const { return state_; }
  [[nodiscard]] Observation view() const { return player_view(state_, config_); }
  [[nodiscard]] BiosecurityLevel player_level() const { return state_.player().biosecurity; }
  [[nodiscard]] bool terminated() const { return state_.terminated; }
  // Turns elapsed; only meaningful once terminated.
  [[nodiscard]] int tau() const { return state_.turn; }
  [[nodiscard]] int round_score() const;
  [[nodiscard]] double current_infection_probability(int farm_id) const;

 private:
  GameConfig config_;
  RoundState state_;
  Rng spread_rng_;
  void fill_kernel_column(std::size_t source);

  // exp(-d_ij / lambda), row-major farm_count x farm_count. Only the columns
  // of infected sources are filled.
  std::vector<double> kernel_;
};

}  // namespace farmrisk
