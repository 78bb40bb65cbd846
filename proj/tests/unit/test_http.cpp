#include <doctest.h>

#include <thread>

#include <httplib.h>

#include "farmrisk/common/error.hpp"
#include "farmrisk//service/http_api.hpp"

using namespace farmrisk;
using ojson = nlohmann::ordered_json;

TEST_CASE("loopback http round trip") {
  StoreOptions o;
  o.id_seed = 3;
  SessionStore store(o);
  httplib::Server server;
  install_routes(server, store);
  const int port = server.bind_to_any_port("127.0.0.1");
  REQUIRE(port > 0);
  std::thread t([&] { server.listen_after_bind(); });
  server.wait_until_ready();

  httplib::Client client("127.0.0.1", port);
  auto res = client.Post("/sessions", R"({"seed": 12})", "application/json");
  REQUIRE(res);
  CHECK(res->status == 201);
  const std::string id = ojson::parse(res->body)["session_id"];

  res = client.Get("/sessions/" + id + "/state");
  REQUIRE(res);
  CHECK(res->status == 200);
  CHECK(ojson::parse(res->body)["turn"] == 1);

  const std::string body = R"({"action":"invest","client_elapsed_ms":321,"idempotency_key":"k1"})";
  res = client.Post("/sessions/" + id + "/actions", body, "application/json");
  REQUIRE(res);
  CHECK(res->status == 200);
  const std::string first = res->body;
  res = client.Post("/sessions/" + id + "/actions", body, "application/json");
  REQUIRE(res);
  CHECK(res->body == first);
  CHECK(store.log(id).rounds[0].actions.size() == 1);

  res = client.Get("/export?since=0");
  REQUIRE(res);
  CHECK(res->status == 200);
  CHECK(res->get_header_value("Content-Type") == "application/x-ndjson");

  res = client.Get("/sessions/zzz/summary");
  REQUIRE(res);
  CHECK(res->status == 404);

  server.stop();
  t.join();
}
