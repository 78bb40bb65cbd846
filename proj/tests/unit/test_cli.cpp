#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "../../tools/commands.hpp"

using namespace farmrisk;
using namespace farmrisk::cli;
namespace fs = std::filesystem;

TEST_CASE("agent count parsing") {
  CHECK(parse_agent_counts("RA=250,RT=250,LRA=250,LRT=250") == std::array<int, 4>{250, 250, 250, 250});
  CHECK(parse_agent_counts("LRT=3") == std::array<int, 4>{0, 0, 0, 3});
  CHECK(parse_agent_counts("RA=1") == std::array<int, 4>{1, 0, 0, 0});
  for (const char* bad : {"", "RA", "RA=", "RA=x", "RA=-1", "XX=3", "RA=1,RA=2",
                          "RA=250,RT=250,LRA=250,LRA=250", "RA=0", "RA=1;RT=2"}) {
    CAPTURE(bad);
    CHECK_THROWS_AS(parse_agent_counts(bad), ParameterError);
  }
}

TEST_CASE("k range parsing") {
  CHECK(parse_k_range("1..10") == std::pair<std::size_t, std::size_t>{1, 10});
  CHECK(parse_k_range("3..3") == std::pair<std::size_t, std::size_t>{3, 3});
  for (const char* bad : {"", "1-10", "0..4", "5..2", "a..b", "1..", "..4"}) {
    CAPTURE(bad);
    CHECK_THROWS_AS(parse_k_range(bad), ParameterError);
  }
}

TEST_CASE("exit codes") {
  CHECK(exit_code_for(ConfigError("x")) == 2);
  CHECK(exit_code_for(ParameterError("x")) == 2);
  CHECK(exit_code_for(EnvironmentError("x")) == 3);
  CHECK(exit_code_for(StorageError("x")) == 3);
  CHECK(exit_code_for(ParseError("x")) == 4);
  CHECK(exit_code_for(DomainError("x")) == 4);
  CHECK(exit_code_for(ConnectivityError("x")) == 4);
  CHECK(exit_code_for(IncompleteSessionError("x")) == 4);
  CHECK(exit_code_for(CoverageError("x")) == 4);
}

TEST_CASE("config file") {
  const fs::path dir = fs::temp_directory_path() / "farmrisk-cli-config";
  fs::create_directories(dir);
  const fs::path good = dir / "good.json";
  std::ofstream(good) << R"({"game": {"infection": {"rate_high": 0.3}},
                           "agents": {"RA": {"noise_sd": 0.1, "latency": {"k": 0.2}}}})";
  const auto cfg = battery_config_from(load_config_file(good));
  CHECK(cfg.game.infection.rate_high == 0.3);
  const auto& ra = cfg.archetypes[static_cast<std::size_t>(ArchetypeKind::kRA)];
  CHECK(ra.noise_sd == 0.1);
  CHECK(ra.latency.k == 0.2);
  CHECK(ra.latency.a == 4.3068);

  CHECK_THROWS_AS(load_config_file(dir / "missing.json"), ConfigError);
  const fs::path bad_section = dir / "bad_section.json";
  std::ofstream(bad_section) << R"({"gmae": {}})";
  CHECK_THROWS_AS(load_config_file(bad_section), ConfigError);
  const fs::path bad_key = dir / "bad_key.json";
  std::ofstream(bad_key) << R"({"agents": {"RA": {"noise": 0.1}}})";
  CHECK_THROWS_AS(battery_config_from(load_config_file(bad_key)), ConfigError);
  const fs::path bad_json = dir / "bad.json";
  std::ofstream(bad_json) << "{";
  CHECK_THROWS_AS(load_config_file(bad_json), ConfigError);
  fs::remove_all(dir);
}

TEST_CASE("labels path") {
  CHECK(labels_path_for("out/logs.jsonl") == fs::path("out/logs.labels.csv"));
}

TEST_CASE("export of an empty directory") {
  const fs::path dir = fs::temp_directory_path() / "farmrisk-cli-empty";
  fs::remove_all(dir);
  fs::create_directories(dir);
  ExportOptions o;
  o.data_dir = dir;
  std::ostringstream out;
  cmd_export(o, out);
  CHECK(out.str().empty());
  fs::remove_all(dir);
  CHECK_THROWS_AS(cmd_export(o, out), ConfigError);
}
