#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <string>
#include <vector>

#include <json.hpp>

#include "farmrisk/game/session.hpp"

namespace farmrisk {

enum class SessionStatus { kActive, kComplete, kAbandoned };

std::string_view to_string(SessionStatus s);

// Milliseconds since the epoch; injectable for tests.
using Clock = std::function<std::int64_t()>;
std::int64_t system_clock_ms();

struct StoreOptions {
  // Empty: keep everything in memory.
  std::filesystem::path data_dir;
  std::int64_t abandon_after_ms = 30 * 60 * 1000;
  GameConfig game;
  // The game config is saved in <data_dir>/game.json on first use. A later
  // store on the same directory must match it unless this is set, in which
  // case the saved one is used.
  bool adopt_saved_game = false;
  // Seeds the session id and default seed generator; random when unset.
  std::optional<std::uint64_t> id_seed;
};

struct CreateRequest {
  std::optional<std::uint64_t> seed;
  PlayerKind player_kind = PlayerKind::kHuman;
  std::optional<std::string> archetype;
};

struct SessionEnvelope {
  std::string session_id;
  std::uint64_t seed = 0;
  std::int64_t created_at_ms = 0;
  SessionStatus status = SessionStatus::kActive;
  int round = 1;
  int turn = 1;
};

struct ActionRequest {
  Action action = Action::kHold;
  std::int64_t client_elapsed_ms = 0;
  std::string idempotency_key;
};

// Live sessions, one writer at a time per session. With a data directory
// every session is an append-only JSON Lines event log
// (<dir>/sessions/<id>.jsonl) plus <dir>/index.jsonl; a new store resumes
// every logged session from its last persisted turn.
class SessionStore {
 public:
  explicit SessionStore(StoreOptions options, Clock clock = system_clock_ms);

  SessionEnvelope create(const CreateRequest& request);
  // Masked observation plus counters. Throws NotFoundError.
  nlohmann::ordered_json state(const std::string& id);
  // Applies one action. A repeated idempotency key returns the stored
  // response without touching the game. Throws NotFoundError, RuleError
  // (state unchanged), StateError (session not active), ParameterError.
  nlohmann::ordered_json submit(const std::string& id, const ActionRequest& request);
  nlohmann::ordered_json summary(const std::string& id);
  SessionStatus status(const std::string& id);
  // Copy of the session's log as recorded so far.
  SessionLog log(const std::string& id);

  // Canonical JSON Lines of complete sessions created at or after `since`,
  // ordered by (created_at, session_id).
  std::string export_jsonl(std::optional<std::int64_t> since = std::nullopt);

  [[nodiscard]] std::size_t size() const;
  [[nodiscard]] const GameConfig& config() const { return options_.game; }

 private:
  struct Entry {
    std::mutex mutex;
    std::unique_ptr<Session> session;
    std::size_t persisted_lines = 0;
    std::int64_t last_activity_ms = 0;
    bool abandoned = false;
    std::map<std::string, nlohmann::ordered_json> responses;
  };

  std::shared_ptr<Entry> find(const std::string& id) const;
  void refresh_status(Entry& e, std::int64_t now) const;
  SessionStatus status_of(const Entry& e) const;
  void persist(Entry& e);
  void append_line(const std::filesystem::path& path, const std::string& line) const;
  void load();
  std::string new_id();

  StoreOptions options_;
  Clock clock_;
  mutable std::shared_mutex map_mutex_;
  std::map<std::string, std::shared_ptr<Entry>> sessions_;
  std::mutex id_mutex_;
  std::uint64_t id_state_ = 0;
};

}  // namespace farmrisk
