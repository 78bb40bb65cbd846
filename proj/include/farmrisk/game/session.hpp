#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "farmrisk/game/config.hpp"
#include "farmrisk/game/round.hpp"

namespace farmrisk {

struct TurnAction {
  int turn = 1;
  Action action = Action::kHold;
  // Decision time reported by the client (render to click).
  std::int64_t latency_ms = 0;
  // Server-measured time since the previous response, kept as a cross-check.
  std::int64_t server_elapsed_ms = 0;
  std::int64_t ts_ms = 0;

  friend bool operator==(const TurnAction&, const TurnAction&) = default;
};

struct RoundRecord {
  int round_index = 1;
  Treatment treatment;
  std::int64_t started_at_ms = 0;
  std::vector<TurnAction> actions;
  // The fields below are valid once finished.
  bool finished = false;
  BiosecurityLevel final_level = BiosecurityLevel::kNone;
  int tau = 0;
  bool infected = false;
  int round_score = 0;

  [[nodiscard]] int invest_count() const;
  // Sum of the turn latencies.
  [[nodiscard]] std::int64_t latency_ms() const;

  friend bool operator==(const RoundRecord&, const RoundRecord&) = default;
};

enum class PlayerKind { kHuman, kAgent };

struct SessionLog {
  std::string session_id;
  std::uint64_t seed = 0;
  PlayerKind player_kind = PlayerKind::kHuman;
  std::optional<std::string> archetype;
  std::int64_t created_at_ms = 0;
  std::vector<int> treatment_order;
  // Finished rounds, plus the in-progress round while the session is live.
  std::vector<RoundRecord> rounds;
  bool finished = false;
  std::int64_t session_profit = 0;
  double payout_usd = 0.0;

  [[nodiscard]] bool complete() const;

  friend bool operator==(const SessionLog&, const SessionLog&) = default;
};

// Seeded uniform permutation of the 32 treatment indices.
std::vector<int> treatment_schedule(std::uint64_t seed);

struct SessionTotals {
  std::int64_t session_profit = 0;
  double payout_usd = 0.0;
};

// Throws IncompleteSessionError unless given 32 finished rounds.
SessionTotals finalize_session(std::span<const RoundRecord> rounds, const GameConfig& config);

struct StepOutcome {
  TurnEvents events;
  std::optional<RoundRecord> finished_round;
  bool session_complete = false;
};

// A full 32-round session. Rounds auto-advance when one terminates. The
// world and spread of round r come from derive_seed(seed, r), so a session
// is reproduced exactly by its seed and its action sequence.
class Session {
 public:
  Session(std::string session_id, std::uint64_t seed, PlayerKind kind,
          std::optional<std::string> archetype, std::int64_t created_at_ms,
          const GameConfig& config);

  StepOutcome act(Action action, std::int64_t latency_ms, std::int64_t server_elapsed_ms,
                  std::int64_t ts_ms);

  [[nodiscard]] const SessionLog& log() const { return log_; }
  [[nodiscard]] bool complete() const { return log_.finished; }
  // Throws StateError once complete.
  [[nodiscard]] const Round& current_round() const;
  [[nodiscard]] Observation view() const { return current_round().view(); }
  [[nodiscard]] int round_index() const;
  [[nodiscard]] std::int64_t cumulative_score() const;
  [[nodiscard]] const GameConfig& config() const { return config_; }

 private:
  void start_round(int round_index, std::int64_t ts_ms);

  GameConfig config_;
  SessionLog log_;
  std::optional<Round> round_;
};

// Re-runs the engine from the stored seed and recorded actions.
SessionLog replay_session(const SessionLog& recorded, const GameConfig& config);

std::string_view to_string(PlayerKind kind);

}  // namespace farmrisk
