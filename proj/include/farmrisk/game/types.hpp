#pragma once

#include <cstdint>
#include <optional>
#include <string_view>

namespace farmrisk {

inline constexpr int kRoundsPerSession = 32;
inline constexpr int kTurnsPerRound = 6;
// Turns needed to go from None to High, one increment per turn.
inline constexpr int kTurnsToHigh = 3;

enum class BiosecurityLevel : std::uint8_t { kNone = 0, kLow = 1, kMedium = 2, kHigh = 3 };

// Ordinal mapping used by the risk-aversion metric.
constexpr int beta(BiosecurityLevel level) { return static_cast<int>(level); }

constexpr BiosecurityLevel level_from_beta(int b) { return static_cast<BiosecurityLevel>(b); }

std::string_view to_string(BiosecurityLevel level);
std::optional<BiosecurityLevel> parse_biosecurity_level(std::string_view s);

enum class Action : std::uint8_t { kInvest, kHold };

std::string_view to_string(Action action);
std::optional<Action> parse_action(std::string_view s);

}  // namespace farmrisk
