#pragma once

#include <istream>
#include <string>
#include <string_view>
#include <vector>

#include "farmrisk/game/session.hpp"

namespace farmrisk {

inline constexpr int kSchemaVersion = 1;

// Canonical JSON Lines serialization of a session: one event per line, kinds
// session_start, round_start, turn_action, infection, round_end, session_end.
// A live (unfinished) session serializes as a prefix of its final form.
std::vector<std::string> session_events(const SessionLog& log);
std::string serialize_session(const SessionLog& log);
std::string serialize_sessions(const std::vector<SessionLog>& logs);

struct ParseOptions {
  // Keep sessions with no session_end (live logs being resumed).
  bool allow_incomplete = false;
};

// Groups events by session_id in order of first appearance. Throws
// ParseError with the offending line number.
std::vector<SessionLog> parse_session_logs(std::istream& in, ParseOptions options = {});
std::vector<SessionLog> parse_session_logs(std::string_view text, ParseOptions options = {});

}  // namespace farmrisk
