#include "farmrisk/service/http_api.hpp"

#include <charconv>
#include <regex>

#include <httplib.h>

#include "farmrisk/agents/archetype.hpp"
#include "farmrisk/common/error.hpp"
#include "farmrisk/game/event_log.hpp"

namespace farmrisk {

using ojson = nlohmann::ordered_json;

namespace {

ApiResponse json_response(int status, const ojson& body) {
  return {status, "application/json", body.dump()};
}

ApiResponse error_response(int status, const std::string& code, const std::string& message) {
  ojson j;
  j["schema_version"] = kSchemaVersion;
  j["error"] = {{"code", code}, {"message", message}};
  if (status == 503) j["error"]["retry_after_ms"] = 1000;
  return json_response(status, j);
}

ojson parse_body(const std::string& body) {
  if (body.empty()) return ojson::object();
  ojson j = ojson::parse(body);  // throws nlohmann::json::parse_error
  if (!j.is_object()) throw ParameterError("request body must be a JSON object");
  return j;
}

std::int64_t parse_int(const std::string& s, const char* what) {
  std::int64_t v = 0;
  const auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || p != s.data() + s.size()) {
    throw ParameterError(std::string(what) + " must be an integer");
  }
  return v;
}

ApiResponse create(SessionStore& store, const ApiRequest& req) {
  const ojson body = parse_body(req.body);
  CreateRequest cr;
  if (body.contains("seed") && !body["seed"].is_null()) {
    if (!body["seed"].is_number_unsigned()) throw ParameterError("seed must be a nonnegative integer");
    cr.seed = body["seed"].get<std::uint64_t>();
  }
  const std::string kind = body.value("player_kind", "human");
  if (kind == "human") {
    cr.player_kind = PlayerKind::kHuman;
  } else if (kind == "agent") {
    cr.player_kind = PlayerKind::kAgent;
  } else {
    throw ParameterError("player_kind must be human or agent");
  }
  if (body.contains("archetype") && !body["archetype"].is_null()) {
    const auto a = body["archetype"].get<std::string>();
    if (!parse_archetype(a)) throw ParameterError("unknown archetype " + a);
    cr.archetype = a;
  }
  const SessionEnvelope env = store.create(cr);
  ojson j;
  j["schema_version"] = kSchemaVersion;
  j["session_id"] = env.session_id;
  j["status"] = std::string(to_string(env.status));
  j["created_at_ms"] = env.created_at_ms;
  j["round"] = env.round;
  j["turn"] = env.turn;
  return json_response(201, j);
}

ApiResponse act(SessionStore& store, const std::string& id, const ApiRequest& req) {
  const ojson body = parse_body(req.body);
  for (const char* key : {"action", "client_elapsed_ms", "idempotency_key"}) {
    if (!body.contains(key)) throw ParameterError(std::string("missing field ") + key);
  }
  // Only these fields are read; anything else in the body is ignored.
  ActionRequest ar;
  if (!body["action"].is_string()) throw ParameterError("action must be a string");
  const auto action = parse_action(body["action"].get<std::string>());
  if (!action) throw ParameterError("action must be invest or hold");
  ar.action = *action;
  if (!body["client_elapsed_ms"].is_number_integer()) {
    throw ParameterError("client_elapsed_ms must be an integer");
  }
  ar.client_elapsed_ms = body["client_elapsed_ms"].get<std::int64_t>();
  if (!body["idempotency_key"].is_string()) throw ParameterError("idempotency_key must be a string");
  ar.idempotency_key = body["idempotency_key"].get<std::string>();
  return json_response(200, store.submit(id, ar));
}

}  // namespace

ApiResponse handle_request(SessionStore& store, const ApiRequest& req) {
  static const std::regex session_route(R"(^/sessions/([A-Za-z0-9_-]+)/(state|actions|summary)$)");
  try {
    std::smatch m;
    if (req.path == "/sessions") {
      if (req.method != "POST") return error_response(405, "method_not_allowed", "use POST");
      return create(store, req);
    }
    if (std::regex_match(req.path, m, session_route)) {
      const std::string id = m[1];
      const std::string what = m[2];
      if (what == "actions") {
        if (req.method != "POST") return error_response(405, "method_not_allowed", "use POST");
        return act(store, id, req);
      }
      if (req.method != "GET") return error_response(405, "method_not_allowed", "use GET");
      return json_response(200, what == "state" ? store.state(id) : store.summary(id));
    }
    if (req.path == "/export") {
      if (req.method != "GET") return error_response(405, "method_not_allowed", "use GET");
      std::optional<std::int64_t> since;
      if (const auto it = req.query.find("since"); it != req.query.end() && !it->second.empty()) {
        since = parse_int(it->second, "since");
      }
      return {200, "application/x-ndjson", store.export_jsonl(since)};
    }
    return error_response(404, "not_found", "no route " + req.path);
  } catch (const nlohmann::json::exception& e) {
    return error_response(400, "bad_request", e.what());
  } catch (const ParameterError& e) {
    return error_response(400, "bad_request", e.what());
  } catch (const NotFoundError& e) {
    return error_response(404, "not_found", e.what());
  } catch (const RuleError& e) {
    return error_response(409, "illegal_action", e.what());
  } catch (const StateError& e) {
    return error_response(409, "session_not_active", e.what());
  } catch (const StorageError& e) {
    return error_response(503, "storage_unavailable", e.what());
  } catch (const Error& e) {
    return error_response(500, "internal", e.what());
  }
}

void install_routes(httplib::Server& server, SessionStore& store) {
  auto adapter = [&store](const httplib::Request& req, httplib::Response& res) {
    ApiRequest ar;
    ar.method = req.method;
    ar.path = req.path;
    for (const auto& [k, v] : req.params) ar.query.emplace(k, v);
    ar.body = req.body;
    const ApiResponse out = handle_request(store, ar);
    res.status = out.status;
    res.set_content(out.body, out.content_type);
  };
  const std::string any = ".*";
  server.Get(any, adapter);
  server.Post(any, adapter);
  server.Put(any, adapter);
  server.Delete(any, adapter);
}

}  // namespace farmrisk
