#include "farmrisk/agents/battery.hpp"

#include <cstdio>

#include "farmrisk/common/error.hpp"

namespace farmrisk {

SessionLog run_agent_session(const AgentArchetype& archetype, std::uint64_t session_seed,
                             std::string session_id, std::int64_t created_at_ms,
                             const GameConfig& config) {
  // The agent's stream is separate from the engine's, so the log replays
  // from (seed, actions) alone.
  Rng rng = make_rng(derive_seed(session_seed, "agent"));
  Agent agent(archetype, rng);
  Session session(std::move(session_id), session_seed, PlayerKind::kAgent,
                  std::string(archetype_name(archetype.kind)), created_at_ms, config);
  std::int64_t clock = created_at_ms;
  int started_round = 0;
  while (!session.complete()) {
    if (session.round_index() != started_round) {
      started_round = session.round_index();
      agent.begin_round(started_round, rng);
    }
    const Observation obs = session.view();
    const Action action = agent.decide(obs, rng);
    const std::int64_t latency = agent.turn_latency_ms();
    clock += latency;
    session.act(action, latency, latency, clock);
  }
  return session.log();
}

std::vector<LabeledSession> run_battery(const std::array<int, 4>& counts, std::uint64_t seed,
                                        const BatteryConfig& config) {
  std::vector<LabeledSession> out;
  std::size_t index = 0;
  for (ArchetypeKind kind : kAllArchetypes) {
    const int n = counts[static_cast<std::size_t>(kind)];
    if (n < 0) throw ParameterError("agent counts must be >= 0");
    for (int i = 0; i < n; ++i, ++index) {
      char id[64];
      std::snprintf(id, sizeof id, "agent-%llu-%06zu", static_cast<unsigned long long>(seed), index);
      const auto session_seed = derive_seed(seed, static_cast<std::uint64_t>(index));
      out.push_back({run_agent_session(config.archetypes[static_cast<std::size_t>(kind)],
                                       session_seed, id, 0, config.game),
                     kind});
    }
  }
  return out;
}

std::string labels_text(const std::vector<LabeledSession>& sessions) {
  std::string out;
  for (const auto& s : sessions) {
    out += s.log.session_id;
    out += ',';
    out += archetype_name(s.truth);
    out += '\n';
  }
  return out;
}

std::vector<SessionLog> logs_of(const std::vector<LabeledSession>& sessions) {
  std::vector<SessionLog> out;
  out.reserve(sessions.size());
  for (const auto& s : sessions) out.push_back(s.log);
  return out;
}

}  // namespace farmrisk
