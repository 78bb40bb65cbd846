#include "farmrisk/service/session_store.hpp"

#include <algorithm>
#include <chrono>
#include <fstream>
#include <random>
#include <sstream>
#include <tuple>

#include "farmrisk/common/csv.hpp"
#include "farmrisk/common/error.hpp"
#include "farmrisk/common/rng.hpp"
#include "farmrisk/game/event_log.hpp"
#include "farmrisk/metrics/rho.hpp"

namespace farmrisk {

using ojson = nlohmann::ordered_json;
namespace fs = std::filesystem;

std::string_view to_string(SessionStatus s) {
  switch (s) {
    case SessionStatus::kActive: return "active";
    case SessionStatus::kComplete: return "complete";
    case SessionStatus::kAbandoned: return "abandoned";
  }
  return "active";
}

std::int64_t system_clock_ms() {
  using namespace std::chrono;
  return duration_cast<milliseconds>(system_clock::now().time_since_epoch()).count();
}

namespace {

ojson round_end_json(const RoundRecord& r) {
  ojson j;
  j["round"] = r.round_index;
  j["final_level"] = std::string(to_string(r.final_level));
  j["tau"] = r.tau;
  j["infected"] = r.infected;
  j["round_score"] = r.round_score;
  j["rho"] = rho_round(r.final_level, r.tau);
  return j;
}

fs::path session_path(const fs::path& dir, const std::string& id) {
  return dir / "sessions" / (id + ".jsonl");
}

fs::path keys_path(const fs::path& dir, const std::string& id) {
  return dir / "sessions" / (id + ".keys.jsonl");
}

std::vector<std::string> read_lines(const fs::path& path) {
  std::vector<std::string> lines;
  std::ifstream in(path);
  if (!in) return lines;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty()) lines.push_back(line);
  }
  return lines;
}

// Text up to the last newline; a write cut short leaves an unterminated tail.
std::string whole_lines(const fs::path& path) {
  if (!fs::exists(path)) return {};
  std::string text = read_text_file(path);
  text.erase(text.rfind('\n') == std::string::npos ? 0 : text.rfind('\n') + 1);
  return text;
}

}  // namespace

SessionStore::SessionStore(StoreOptions options, Clock clock)
    : options_(std::move(options)), clock_(std::move(clock)) {
  options_.game.validate();
  if (options_.abandon_after_ms <= 0) throw ConfigError("abandon timeout must be positive");
  id_state_ = options_.id_seed ? *options_.id_seed
                               : (static_cast<std::uint64_t>(std::random_device{}()) << 32) ^
                                     std::random_device{}() ^ static_cast<std::uint64_t>(clock_());
  if (!options_.data_dir.empty()) {
    std::error_code ec;
    fs::create_directories(options_.data_dir / "sessions", ec);
    if (ec) {
      throw StorageError("cannot create data directory " + options_.data_dir.string() + ": " +
                         ec.message());
    }
    const auto game_path = options_.data_dir / "game.json";
    nlohmann::json mine = options_.game;
    if (fs::exists(game_path)) {
      GameConfig saved;
      try {
        saved = load_game_config(game_path);
      } catch (const ConfigError& e) {
        throw StorageError(std::string("unreadable game.json in data directory: ") + e.what());
      }
      if (options_.adopt_saved_game) {
        options_.game = saved;
      } else if (nlohmann::json(saved) != mine) {
        throw ConfigError("data directory " + options_.data_dir.string() +
                          " was created with a different game config");
      }
    } else if (!options_.adopt_saved_game) {
      write_text_file(game_path, mine.dump(2) + "\n");
    }
    load();
  }
}

std::string SessionStore::new_id() {
  std::lock_guard lock(id_mutex_);
  for (;;) {
    id_state_ = mix64(id_state_ + 0x9e3779b97f4a7c15ULL);
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(id_state_));
    std::shared_lock map_lock(map_mutex_);
    if (!sessions_.count(buf)) return buf;
  }
}

void SessionStore::append_line(const fs::path& path, const std::string& line) const {
  std::ofstream out(path, std::ios::app | std::ios::binary);
  out << line << '\n';
  out.flush();
  if (!out) throw StorageError("cannot append to " + path.string());
}

void SessionStore::persist(Entry& e) {
  if (options_.data_dir.empty()) return;
  const auto lines = session_events(e.session->log());
  const auto path = session_path(options_.data_dir, e.session->log().session_id);
  std::ofstream out(path, std::ios::app | std::ios::binary);
  for (std::size_t i = e.persisted_lines; i < lines.size(); ++i) out << lines[i] << '\n';
  out.flush();
  if (!out) throw StorageError("cannot append to " + path.string());
  e.persisted_lines = lines.size();
}

void SessionStore::load() {
  std::vector<std::string> index;
  {
    std::istringstream in(whole_lines(options_.data_dir / "index.jsonl"));
    for (std::string line; std::getline(in, line);) {
      if (!line.empty()) index.push_back(line);
    }
  }
  for (const auto& line : index) {
    ojson j;
    try {
      j = ojson::parse(line);
    } catch (const nlohmann::json::exception& ex) {
      throw StorageError("corrupt index line: " + std::string(ex.what()));
    }
    const std::string id = j.value("session_id", "");
    if (id.empty() || sessions_.count(id)) continue;
    const auto path = session_path(options_.data_dir, id);
    std::vector<SessionLog> logs;
    try {
      logs = parse_session_logs(whole_lines(path), {.allow_incomplete = true});
    } catch (const Error& ex) {
      throw StorageError("cannot resume session " + id + ": " + ex.what());
    }
    if (logs.size() != 1) throw StorageError("session file " + path.string() + " holds no single session");
    const SessionLog& rec = logs.front();

    auto e = std::make_shared<Entry>();
    e->session = std::make_unique<Session>(rec.session_id, rec.seed, rec.player_kind, rec.archetype,
                                           rec.created_at_ms, options_.game);
    e->last_activity_ms = rec.created_at_ms;
    for (const auto& r : rec.rounds) {
      for (const auto& a : r.actions) {
        e->session->act(a.action, a.latency_ms, a.server_elapsed_ms, a.ts_ms);
        e->last_activity_ms = std::max(e->last_activity_ms, a.ts_ms);
      }
    }
    const auto lines = session_events(e->session->log());
    if (lines != read_lines(path)) {
      // A torn final line: rewrite the file from the replayed log.
      std::string text;
      for (const auto& l : lines) text += l + '\n';
      write_text_file(path, text);
    }
    e->persisted_lines = lines.size();
    for (const auto& kl : read_lines(keys_path(options_.data_dir, id))) {
      try {
        const auto k = ojson::parse(kl);
        e->responses[k.at("key").get<std::string>()] = k.at("response");
      } catch (const nlohmann::json::exception&) {
        break;
      }
    }
    sessions_.emplace(id, std::move(e));
  }
}

std::shared_ptr<SessionStore::Entry> SessionStore::find(const std::string& id) const {
  std::shared_lock lock(map_mutex_);
  const auto it = sessions_.find(id);
  if (it == sessions_.end()) throw NotFoundError("unknown session " + id);
  return it->second;
}

void SessionStore::refresh_status(Entry& e, std::int64_t now) const {
  if (!e.abandoned && !e.session->complete() && now - e.last_activity_ms > options_.abandon_after_ms) {
    e.abandoned = true;
  }
}

SessionStatus SessionStore::status_of(const Entry& e) const {
  if (e.session->complete()) return SessionStatus::kComplete;
  return e.abandoned ? SessionStatus::kAbandoned : SessionStatus::kActive;
}

SessionEnvelope SessionStore::create(const CreateRequest& request) {
  if (request.player_kind == PlayerKind::kHuman && request.archetype) {
    throw ParameterError("only agent sessions carry an archetype");
  }
  const std::string id = new_id();
  std::uint64_t seed = 0;
  if (request.seed) {
    seed = *request.seed;
  } else {
    std::lock_guard lock(id_mutex_);
    id_state_ = mix64(id_state_ + 0x9e3779b97f4a7c15ULL);
    seed = id_state_;
  }
  const std::int64_t now = clock_();
  auto e = std::make_shared<Entry>();
  e->session = std::make_unique<Session>(id, seed, request.player_kind, request.archetype, now,
                                         options_.game);
  e->last_activity_ms = now;
  {
    std::lock_guard lock(e->mutex);
    if (!options_.data_dir.empty()) {
      persist(*e);
      ojson j;
      j["schema_version"] = kSchemaVersion;
      j["session_id"] = id;
      j["created_at_ms"] = now;
      j["player_kind"] = std::string(to_string(request.player_kind));
      append_line(options_.data_dir / "index.jsonl", j.dump());
    }
  }
  {
    std::unique_lock lock(map_mutex_);
    sessions_.emplace(id, e);
  }
  return {id, seed, now, SessionStatus::kActive, 1, 1};
}

ojson SessionStore::state(const std::string& id) {
  auto e = find(id);
  std::lock_guard lock(e->mutex);
  const std::int64_t now = clock_();
  refresh_status(*e, now);
  ojson j;
  j["schema_version"] = kSchemaVersion;
  j["session_id"] = id;
  const SessionStatus st = status_of(*e);
  j["status"] = std::string(to_string(st));
  j["cumulative_score"] = e->session->cumulative_score();
  if (st == SessionStatus::kActive) {
    e->last_activity_ms = now;
    const Observation obs = e->session->view();
    j["round"] = obs.round_index;
    j["turn"] = obs.turn;
    j["observation"] = to_json(obs);
  } else {
    j["round"] = e->session->round_index();
    j["observation"] = nullptr;
    j["summary_url"] = "/sessions/" + id + "/summary";
  }
  return j;
}

ojson SessionStore::submit(const std::string& id, const ActionRequest& request) {
  if (request.idempotency_key.empty()) throw ParameterError("idempotency_key is required");
  if (request.client_elapsed_ms < 0) throw ParameterError("client_elapsed_ms must be >= 0");
  auto e = find(id);
  std::lock_guard lock(e->mutex);
  if (const auto it = e->responses.find(request.idempotency_key); it != e->responses.end()) {
    return it->second;
  }
  const std::int64_t now = clock_();
  refresh_status(*e, now);
  const SessionStatus st = status_of(*e);
  if (st != SessionStatus::kActive) {
    throw StateError("session " + id + " is " + std::string(to_string(st)));
  }
  const std::int64_t server_elapsed = std::max<std::int64_t>(0, now - e->last_activity_ms);
  const int round_before = e->session->round_index();
  const StepOutcome out = e->session->act(request.action, request.client_elapsed_ms, server_elapsed, now);
  e->last_activity_ms = now;
  persist(*e);

  ojson j;
  j["schema_version"] = kSchemaVersion;
  j["session_id"] = id;
  j["status"] = std::string(to_string(status_of(*e)));
  ojson t;
  t["round"] = round_before;
  t["turn"] = out.events.turn;
  t["action"] = std::string(to_string(out.events.action));
  t["level_after"] = std::string(to_string(out.events.level_after));
  t["player_infected"] = out.events.player_infected;
  t["round_over"] = out.events.round_over;
  j["turn_result"] = t;
  j["round_end"] = out.finished_round ? round_end_json(*out.finished_round) : ojson(nullptr);
  j["cumulative_score"] = e->session->cumulative_score();
  if (out.session_complete) {
    j["session_profit"] = e->session->log().session_profit;
    j["payout_usd"] = e->session->log().payout_usd;
    j["observation"] = nullptr;
  } else {
    j["observation"] = to_json(e->session->view());
  }
  e->responses[request.idempotency_key] = j;
  if (!options_.data_dir.empty()) {
    ojson k;
    k["key"] = request.idempotency_key;
    k["response"] = j;
    append_line(keys_path(options_.data_dir, id), k.dump());
  }
  return j;
}

ojson SessionStore::summary(const std::string& id) {
  auto e = find(id);
  std::lock_guard lock(e->mutex);
  refresh_status(*e, clock_());
  const SessionLog& log = e->session->log();
  ojson j;
  j["schema_version"] = kSchemaVersion;
  j["session_id"] = id;
  j["status"] = std::string(to_string(status_of(*e)));
  ojson rounds = ojson::array();
  int infections = 0;
  double rho_sum = 0.0;
  for (const auto& r : log.rounds) {
    if (!r.finished) continue;
    ojson rj = round_end_json(r);
    rj["treatment"] = r.treatment.index();
    rounds.push_back(rj);
    infections += r.infected ? 1 : 0;
    rho_sum += rho_round(r.final_level, r.tau);
  }
  j["rounds_completed"] = rounds.size();
  j["cumulative_score"] = e->session->cumulative_score();
  j["infections"] = infections;
  j["mean_rho"] = rounds.empty() ? ojson(nullptr) : ojson(rho_sum / static_cast<double>(rounds.size()));
  if (log.finished) {
    j["session_profit"] = log.session_profit;
    j["payout_usd"] = log.payout_usd;
  } else {
    j["session_profit"] = nullptr;
    j["payout_usd"] = nullptr;
  }
  j["rounds"] = rounds;
  return j;
}

SessionStatus SessionStore::status(const std::string& id) {
  auto e = find(id);
  std::lock_guard lock(e->mutex);
  refresh_status(*e, clock_());
  return status_of(*e);
}

SessionLog SessionStore::log(const std::string& id) {
  auto e = find(id);
  std::lock_guard lock(e->mutex);
  return e->session->log();
}

std::string SessionStore::export_jsonl(std::optional<std::int64_t> since) {
  std::vector<std::shared_ptr<Entry>> entries;
  {
    std::shared_lock lock(map_mutex_);
    for (const auto& [id, e] : sessions_) entries.push_back(e);
  }
  std::vector<SessionLog> logs;
  for (const auto& e : entries) {
    std::lock_guard lock(e->mutex);
    const SessionLog& log = e->session->log();
    if (!log.complete()) continue;
    if (since && log.created_at_ms < *since) continue;
    logs.push_back(log);
  }
  std::sort(logs.begin(), logs.end(), [](const SessionLog& a, const SessionLog& b) {
    return std::tie(a.created_at_ms, a.session_id) < std::tie(b.created_at_ms, b.session_id);
  });
  return serialize_sessions(logs);
}

std::size_t SessionStore::size() const {
  std::shared_lock lock(map_mutex_);
  return sessions_.size();
}

}  // namespace farmrisk
