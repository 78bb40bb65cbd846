#pragma once

#include <map>
#include <string>

#include "farmrisk/service/session_store.hpp"

namespace httplib {
class Server;
}

namespace farmrisk {

struct ApiRequest {
  std::string method;
  std::string path;
  std::map<std::string, std::string> query;
  std::string body;
};

struct ApiResponse {
  int status = 200;
  std::string content_type = "application/json";
  std::string body;
};

// Routes:
//   POST /sessions                  -> 201 {session_id, status, round, turn}
//   GET  /sessions/{id}/state       -> masked observation
//   POST /sessions/{id}/actions     -> {action, client_elapsed_ms, idempotency_key}
//   GET  /sessions/{id}/summary
//   GET  /export?since=ms           -> application/x-ndjson
// Errors are {schema_version, error: {code, message}}: 400 bad request,
// 404 unknown session or route, 409 rule violation or inactive session,
// 503 storage failure (with retry_after_ms).
ApiResponse handle_request(SessionStore& store, const ApiRequest& request);

// Registers handle_request on every route of the server.
void install_routes(httplib::Server& server, SessionStore& store);

}  // namespace farmrisk
