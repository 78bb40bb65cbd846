#include "farmrisk/agents/archetype.hpp"

#include <algorithm>
#include <cmath>

namespace farmrisk {

std::string_view archetype_name(ArchetypeKind kind) {
  switch (kind) {
    case ArchetypeKind::kRA: return "RA";
    case ArchetypeKind::kRT: return "RT";
    case ArchetypeKind::kLRA: return "LRA";
    case ArchetypeKind::kLRT: return "LRT";
  }
  return "?";
}

std::optional<ArchetypeKind> parse_archetype(std::string_view name) {
  for (auto k : kAllArchetypes) {
    if (archetype_name(k) == name) return k;
  }
  return std::nullopt;
}

AgentArchetype AgentArchetype::defaults(ArchetypeKind kind) {
  AgentArchetype a;
  a.kind = kind;
  a.latency.lognormal_sd = 0.3;
  // Per-group decay parameters and mean time offsets.
  switch (kind) {
    case ArchetypeKind::kRA:
      a.p_start = a.p_end = 0.95;
      a.latency.a = 4.3068;
      a.latency.k = 0.3650;
      a.latency.group_offset_ms = -326.90;
      break;
    case ArchetypeKind::kRT:
      a.p_start = a.p_end = 0.05;
      a.latency.a = 4.2603;
      a.latency.k = 0.3321;
      a.latency.group_offset_ms = -555.87;
      break;
    case ArchetypeKind::kLRA:
      a.p_start = 0.15;
      a.p_end = 0.90;
      a.latency.a = 4.2547;
      a.latency.k = 0.2810;
      a.latency.group_offset_ms = 274.00;
      break;
    case ArchetypeKind::kLRT:
      a.p_start = 0.90;
      a.p_end = 0.15;
      a.latency.a = 4.3152;
      a.latency.k = 0.3282;
      a.latency.group_offset_ms = 686.51;
      break;
  }
  return a;
}

double invest_probability(double p_start, double p_end, int round_index, double round_noise,
                          double contagion_sensitivity, bool contagion_high) {
  const double ramp = p_start + (p_end - p_start) * static_cast<double>(round_index - 1) /
                                    static_cast<double>(kRoundsPerSession - 1);
  const double p = ramp + round_noise + (contagion_high ? contagion_sensitivity : 0.0);
  return std::clamp(p, 0.0, 1.0);
}

Agent::Agent(const AgentArchetype& archetype, Rng& rng) : archetype_(archetype) {
  archetype_.latency.validate();
  const double js = standard_normal(rng);
  const double je = standard_normal(rng);
  p_start_ = std::clamp(archetype.p_start + archetype.agent_sd * js, 0.0, 1.0);
  p_end_ = std::clamp(archetype.p_end + archetype.agent_sd * je, 0.0, 1.0);
}

void Agent::begin_round(int round_index, Rng& rng) {
  round_index_ = round_index;
  round_noise_ = archetype_.noise_sd * standard_normal(rng);
  round_latency_ms_ = sample_latency(archetype_.latency, round_index, rng);
}

double Agent::round_probability(bool contagion_high) const {
  return invest_probability(p_start_, p_end_, round_index_, round_noise_,
                            archetype_.contagion_sensitivity, contagion_high);
}

Action Agent::decide(const Observation& obs, Rng& rng) const {
  const bool high = obs.message.contagion_level == FactorLevel::kHigh;
  return farmrisk::decide(round_probability(high), obs.turn, obs.player_level, rng);
}

std::int64_t Agent::turn_latency_ms() const {
  return std::llround(round_latency_ms_ / static_cast<double>(kTurnsPerRound));
}

Action decide(double invest_prob, int turn, BiosecurityLevel level, Rng& rng) {
  if (level == BiosecurityLevel::kHigh || turn > kTurnsToHigh) return Action::kHold;
  return uniform01(rng) < invest_prob ? Action::kInvest : Action::kHold;
}

}  // namespace farmrisk
