#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <ostream>
#include <string>

#include <json.hpp>

#include "farmrisk/agents/battery.hpp"
#include "farmrisk/analysis/pipeline.hpp"

namespace farmrisk::cli {

enum ExitCode { kOk = 0, kUsage = 2, kEnvironment = 3, kData = 4 };

// Exit code for an exception escaping a command.
int exit_code_for(const std::exception& e);

// "RA=250,RT=250,LRA=250,LRT=250"; omitted archetypes get 0. Throws
// ParameterError on anything else.
std::array<int, 4> parse_agent_counts(const std::string& spec);
// "1..10" -> {1, 10}.
std::pair<std::size_t, std::size_t> parse_k_range(const std::string& spec);

// JSON config file with optional sections "game", "agents" and one per
// command ("simulate", "analyze", "serve", "export") whose keys mirror the
// long flag names with '-' replaced by '_'.
nlohmann::json load_config_file(const std::filesystem::path& path);
// Applies the "game" and "agents" sections.
BatteryConfig battery_config_from(const nlohmann::json& config);

struct SimulateOptions {
  std::array<int, 4> counts{};
  std::uint64_t seed = 0;
  std::filesystem::path out;
};

// Writes out (JSON Lines) and <out stem>.labels.csv, prints a summary.
void cmd_simulate(const SimulateOptions& options, const BatteryConfig& config, std::ostream& log);

std::filesystem::path labels_path_for(const std::filesystem::path& logs);

struct AnalyzeOptions {
  std::filesystem::path input;
  std::filesystem::path out_dir;
  std::optional<std::filesystem::path> labels;
  AnalysisOptions analysis;
};

void cmd_analyze(const AnalyzeOptions& options, std::ostream& log);

struct ServeOptions {
  std::string host = "127.0.0.1";
  int port = 8080;
  std::filesystem::path data_dir = "data";
  std::int64_t timeout_ms = 30 * 60 * 1000;
  GameConfig game;
};

// Blocks until SIGINT/SIGTERM. Throws EnvironmentError when the port is
// taken.
void cmd_serve(const ServeOptions& options, std::ostream& log);

struct ExportOptions {
  std::filesystem::path data_dir = "data";
  std::optional<std::int64_t> since;
  // Empty: standard output.
  std::filesystem::path out;
};

void cmd_export(const ExportOptions& options, std::ostream& out);

class EnvironmentError : public Error {
 public:
  using Error::Error;
};

}  // namespace farmrisk::cli
