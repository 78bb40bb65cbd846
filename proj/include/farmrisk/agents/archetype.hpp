#pragma once

#include <array>
#include <optional>
#include <string>
#include <string_view>

#include "farmrisk/agents/latency.hpp"
#include "farmrisk/common/rng.hpp"
#include "farmrisk/game/round.hpp"

namespace farmrisk {

enum class ArchetypeKind { kRA = 0, kRT = 1, kLRA = 2, kLRT = 3 };

inline constexpr std::array<ArchetypeKind, 4> kAllArchetypes = {
    ArchetypeKind::kRA, ArchetypeKind::kRT, ArchetypeKind::kLRA, ArchetypeKind::kLRT};

std::string_view archetype_name(ArchetypeKind kind);
std::optional<ArchetypeKind> parse_archetype(std::string_view name);

struct AgentArchetype {
  ArchetypeKind kind = ArchetypeKind::kRA;
  double p_start = 0.95;
  double p_end = 0.95;
  // Per-round perturbation of the invest probability.
  double noise_sd = 0.0;
  // Added to the invest probability when the contagion message says High.
  double contagion_sensitivity = 0.0;
  // Between-agent spread of p_start and p_end. Real populations are not
  // point masses; with 0 a planted population splits the kNN graph.
  double agent_sd = 0.1;
  LatencyModel latency;

  static AgentArchetype defaults(ArchetypeKind kind);
};

// Linear ramp from p_start (round 1) to p_end (round 32), plus the round
// noise and the contagion term, clamped to [0,1].
double invest_probability(double p_start, double p_end, int round_index, double round_noise,
                          double contagion_sensitivity, bool contagion_high);

// One synthetic player. The agent acts on the ρ opportunity window: it may
// invest on turns 1..3 with the round's probability and holds afterwards.
class Agent {
 public:
  // Draws the agent's own ramp endpoints (agent_sd jitter).
  Agent(const AgentArchetype& archetype, Rng& rng);

  // Draws the round noise and the round latency.
  void begin_round(int round_index, Rng& rng);
  Action decide(const Observation& obs, Rng& rng) const;
  // Per-turn latency share of the round latency.
  [[nodiscard]] std::int64_t turn_latency_ms() const;

  [[nodiscard]] const AgentArchetype& archetype() const { return archetype_; }
  [[nodiscard]] double p_start() const { return p_start_; }
  [[nodiscard]] double p_end() const { return p_end_; }
  [[nodiscard]] double round_probability(bool contagion_high) const;

 private:
  AgentArchetype archetype_;
  double p_start_;
  double p_end_;
  int round_index_ = 1;
  double round_noise_ = 0.0;
  double round_latency_ms_ = 0.0;
};

// Stateless form of a single decision for a known round probability.
Action decide(double invest_prob, int turn, BiosecurityLevel level, Rng& rng);

}  // namespace farmrisk
