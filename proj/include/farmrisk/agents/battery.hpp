#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "farmrisk/agents/archetype.hpp"
#include "farmrisk/game/session.hpp"

namespace farmrisk {

struct LabeledSession {
  SessionLog log;
  ArchetypeKind truth = ArchetypeKind::kRA;
};

struct BatteryConfig {
  GameConfig game;
  // Indexed by ArchetypeKind.
  std::array<AgentArchetype, 4> archetypes = {
      AgentArchetype::defaults(ArchetypeKind::kRA), AgentArchetype::defaults(ArchetypeKind::kRT),
      AgentArchetype::defaults(ArchetypeKind::kLRA), AgentArchetype::defaults(ArchetypeKind::kLRT)};

  [[nodiscard]] AgentArchetype& archetype(ArchetypeKind k) {
    return archetypes[static_cast<std::size_t>(k)];
  }
};

// Plays one full session with a synthetic agent. Timestamps are synthetic:
// the clock starts at created_at_ms and advances by each turn latency.
SessionLog run_agent_session(const AgentArchetype& archetype, std::uint64_t session_seed,
                             std::string session_id, std::int64_t created_at_ms,
                             const GameConfig& config);

// counts[k] agents of archetype k, in RA, RT, LRA, LRT blocks. Agent i gets
// session seed derive_seed(seed, i) and id "agent-<seed>-<i>".
std::vector<LabeledSession> run_battery(const std::array<int, 4>& counts, std::uint64_t seed,
                                        const BatteryConfig& config);

// Sidecar ground truth: one "session_id,archetype" line per session.
std::string labels_text(const std::vector<LabeledSession>& sessions);
std::vector<SessionLog> logs_of(const std::vector<LabeledSession>& sessions);

}  // namespace farmrisk
