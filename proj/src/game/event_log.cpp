#include "farmrisk/game/event_log.hpp"

#include <map>
#include <sstream>

#include <json.hpp>

#include "farmrisk/common/error.hpp"

namespace farmrisk {

using ojson = nlohmann::ordered_json;

namespace {

ojson event_head(const char* kind, const SessionLog& log, std::int64_t ts) {
  ojson j;
  j["event"] = kind;
  j["schema_version"] = kSchemaVersion;
  j["session_id"] = log.session_id;
  j["ts_ms"] = ts;
  return j;
}

ojson factors_json(const Treatment& t) {
  ojson f;
  for (Factor factor : kAllFactors) {
    f[std::string(factor_name(factor))] = std::string(level_name(factor, t.level(factor)));
  }
  return f;
}

}  // namespace

std::vector<std::string> session_events(const SessionLog& log) {
  std::vector<std::string> lines;
  {
    ojson j = event_head("session_start", log, log.created_at_ms);
    j["seed"] = log.seed;
    j["player_kind"] = std::string(to_string(log.player_kind));
    j["archetype"] = log.archetype ? ojson(*log.archetype) : ojson(nullptr);
    j["treatment_order"] = log.treatment_order;
    lines.push_back(j.dump());
  }
  std::int64_t last_ts = log.created_at_ms;
  for (const RoundRecord& r : log.rounds) {
    {
      ojson j = event_head("round_start", log, r.started_at_ms);
      j["round"] = r.round_index;
      j["treatment"] = r.treatment.index();
      j["factors"] = factors_json(r.treatment);
      lines.push_back(j.dump());
    }
    int level = 0;
    for (std::size_t k = 0; k < r.actions.size(); ++k) {
      const TurnAction& a = r.actions[k];
      if (a.action == Action::kInvest) ++level;
      ojson j = event_head("turn_action", log, a.ts_ms);
      j["round"] = r.round_index;
      j["turn"] = a.turn;
      j["action"] = std::string(to_string(a.action));
      j["latency_ms"] = a.latency_ms;
      j["server_elapsed_ms"] = a.server_elapsed_ms;
      j["level_after"] = std::string(to_string(level_from_beta(level)));
      lines.push_back(j.dump());
      last_ts = a.ts_ms;
      if (r.finished && r.infected && k + 1 == r.actions.size()) {
        ojson inf = event_head("infection", log, a.ts_ms);
        inf["round"] = r.round_index;
        inf["turn"] = a.turn;
        inf["farm"] = "player";
        lines.push_back(inf.dump());
      }
    }
    if (r.finished) {
      ojson j = event_head("round_end", log, last_ts);
      j["round"] = r.round_index;
      j["final_level"] = std::string(to_string(r.final_level));
      j["tau"] = r.tau;
      j["infected"] = r.infected;
      j["round_score"] = r.round_score;
      lines.push_back(j.dump());
    }
  }
  if (log.finished) {
    ojson j = event_head("session_end", log, last_ts);
    j["session_profit"] = log.session_profit;
    j["payout_usd"] = log.payout_usd;
    lines.push_back(j.dump());
  }
  return lines;
}

std::string serialize_session(const SessionLog& log) {
  std::string out;
  for (const auto& line : session_events(log)) {
    out += line;
    out += '\n';
  }
  return out;
}

std::string serialize_sessions(const std::vector<SessionLog>& logs) {
  std::string out;
  for (const auto& log : logs) out += serialize_session(log);
  return out;
}

namespace {

struct Builder {
  SessionLog log;
  bool started = false;
};

[[noreturn]] void fail(std::size_t line_no, const std::string& what) {
  throw ParseError("line " + std::to_string(line_no) + ": " + what);
}

template <typename T>
T field(const nlohmann::json& j, const char* key, std::size_t line_no) {
  if (!j.contains(key)) fail(line_no, std::string("missing field '") + key + "'");
  try {
    return j.at(key).get<T>();
  } catch (const nlohmann::json::exception& e) {
    fail(line_no, std::string("bad field '") + key + "': " + e.what());
  }
}

RoundRecord& current_round(Builder& b, int round, std::size_t line_no) {
  if (b.log.rounds.empty() || b.log.rounds.back().round_index != round) {
    fail(line_no, "event for round " + std::to_string(round) + " outside that round");
  }
  return b.log.rounds.back();
}

}  // namespace

std::vector<SessionLog> parse_session_logs(std::istream& in, ParseOptions options) {
  std::vector<std::string> order;
  std::map<std::string, Builder> builders;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(line);
    } catch (const nlohmann::json::exception& e) {
      fail(line_no, std::string("invalid JSON: ") + e.what());
    }
    const auto kind = field<std::string>(j, "event", line_no);
    const auto version = field<int>(j, "schema_version", line_no);
    if (version != kSchemaVersion) fail(line_no, "unsupported schema_version " + std::to_string(version));
    const auto id = field<std::string>(j, "session_id", line_no);
    const auto ts = field<std::int64_t>(j, "ts_ms", line_no);

    if (kind == "session_start") {
      if (builders.contains(id)) fail(line_no, "duplicate session_start for " + id);
      Builder& b = builders[id];
      order.push_back(id);
      b.started = true;
      b.log.session_id = id;
      b.log.seed = field<std::uint64_t>(j, "seed", line_no);
      const auto pk = field<std::string>(j, "player_kind", line_no);
      if (pk != "human" && pk != "agent") fail(line_no, "unknown player_kind " + pk);
      b.log.player_kind = pk == "human" ? PlayerKind::kHuman : PlayerKind::kAgent;
      if (j.contains("archetype") && !j.at("archetype").is_null()) {
        b.log.archetype = field<std::string>(j, "archetype", line_no);
      }
      b.log.created_at_ms = ts;
      b.log.treatment_order = field<std::vector<int>>(j, "treatment_order", line_no);
      continue;
    }
    auto it = builders.find(id);
    if (it == builders.end()) fail(line_no, "event before session_start for " + id);
    Builder& b = it->second;
    if (b.log.finished) fail(line_no, "event after session_end for " + id);

    if (kind == "round_start") {
      const int round = field<int>(j, "round", line_no);
      if (round != static_cast<int>(b.log.rounds.size()) + 1) fail(line_no, "round out of order");
      if (!b.log.rounds.empty() && !b.log.rounds.back().finished) {
        fail(line_no, "round_start before previous round_end");
      }
      RoundRecord r;
      r.round_index = round;
      r.treatment = Treatment::from_index(field<int>(j, "treatment", line_no));
      r.started_at_ms = ts;
      b.log.rounds.push_back(std::move(r));
    } else if (kind == "turn_action") {
      RoundRecord& r = current_round(b, field<int>(j, "round", line_no), line_no);
      if (r.finished) fail(line_no, "turn_action after round_end");
      TurnAction a;
      a.turn = field<int>(j, "turn", line_no);
      const auto act = parse_action(field<std::string>(j, "action", line_no));
      if (!act) fail(line_no, "unknown action");
      a.action = *act;
      a.latency_ms = field<std::int64_t>(j, "latency_ms", line_no);
      a.server_elapsed_ms = field<std::int64_t>(j, "server_elapsed_ms", line_no);
      a.ts_ms = ts;
      if (a.latency_ms < 0) fail(line_no, "negative latency");
      r.actions.push_back(a);
    } else if (kind == "infection") {
      current_round(b, field<int>(j, "round", line_no), line_no);
    } else if (kind == "round_end") {
      RoundRecord& r = current_round(b, field<int>(j, "round", line_no), line_no);
      const auto lvl = parse_biosecurity_level(field<std::string>(j, "final_level", line_no));
      if (!lvl) fail(line_no, "unknown final_level");
      r.final_level = *lvl;
      r.tau = field<int>(j, "tau", line_no);
      r.infected = field<bool>(j, "infected", line_no);
      r.round_score = field<int>(j, "round_score", line_no);
      r.finished = true;
      if (r.invest_count() != beta(r.final_level)) fail(line_no, "invest count disagrees with final_level");
      if (r.tau < 1 || r.tau > kTurnsPerRound) fail(line_no, "tau out of range");
    } else if (kind == "session_end") {
      b.log.session_profit = field<std::int64_t>(j, "session_profit", line_no);
      b.log.payout_usd = field<double>(j, "payout_usd", line_no);
      b.log.finished = true;
    } else {
      fail(line_no, "unknown event kind " + kind);
    }
  }

  std::vector<SessionLog> out;
  out.reserve(order.size());
  for (const auto& id : order) {
    Builder& b = builders[id];
    if (!b.log.finished && !options.allow_incomplete) {
      throw ParseError("session " + id + " has no session_end");
    }
    out.push_back(std::move(b.log));
  }
  return out;
}

std::vector<SessionLog> parse_session_logs(std::string_view text, ParseOptions options) {
  std::istringstream in{std::string(text)};
  return parse_session_logs(in, options);
}

}  // namespace farmrisk
