#include "commands.hpp"

#include <atomic>
#include <charconv>
#include <csignal>
#include <chrono>
#include <fstream>
#include <map>
#include <sstream>
#include <thread>

#include <httplib.h>

#include "farmrisk/cluster/archetypes.hpp"
#include "farmrisk/common/csv.hpp"
#include "farmrisk/game/event_log.hpp"
#include "farmrisk/metrics/rho.hpp"
#include "farmrisk/service/http_api.hpp"
#include "farmrisk/service/session_store.hpp"

namespace farmrisk::cli {

namespace fs = std::filesystem;
using json = nlohmann::json;

int exit_code_for(const std::exception& e) {
  if (dynamic_cast<const ConfigError*>(&e) || dynamic_cast<const ParameterError*>(&e)) return kUsage;
  if (dynamic_cast<const EnvironmentError*>(&e) || dynamic_cast<const StorageError*>(&e)) {
    return kEnvironment;
  }
  if (dynamic_cast<const ParseError*>(&e) || dynamic_cast<const DomainError*>(&e) ||
      dynamic_cast<const ConnectivityError*>(&e) || dynamic_cast<const IncompleteSessionError*>(&e) ||
      dynamic_cast<const CoverageError*>(&e)) {
    return kData;
  }
  return kData;
}

namespace {

int parse_nonnegative(std::string_view s, const std::string& what) {
  int v = 0;
  const auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc{} || p != s.data() + s.size() || v < 0) {
    throw ParameterError(what + ": expected a nonnegative integer, got '" + std::string(s) + "'");
  }
  return v;
}

void read_double(const json& j, const char* key, double& out) {
  if (!j.contains(key)) return;
  if (!j[key].is_number()) throw ConfigError(std::string(key) + " must be a number");
  out = j[key].get<double>();
}

void check_keys(const json& j, std::initializer_list<const char*> allowed, const std::string& where) {
  if (!j.is_object()) throw ConfigError(where + " must be an object");
  for (const auto& [k, v] : j.items()) {
    bool ok = false;
    for (const char* a : allowed) ok = ok || k == a;
    if (!ok) throw ConfigError("unknown key '" + k + "' in " + where);
  }
}

// Handles SIGINT/SIGTERM for serve.
std::atomic<bool> g_stop{false};
extern "C" void on_signal(int) { g_stop.store(true); }

}  // namespace

std::array<int, 4> parse_agent_counts(const std::string& spec) {
  std::array<int, 4> counts{};
  std::array<bool, 4> seen{};
  std::stringstream ss(spec);
  std::string item;
  bool any = false;
  while (std::getline(ss, item, ',')) {
    const auto eq = item.find('=');
    if (eq == std::string::npos) throw ParameterError("--agents: expected NAME=COUNT, got '" + item + "'");
    const auto kind = parse_archetype(item.substr(0, eq));
    if (!kind) throw ParameterError("--agents: unknown archetype '" + item.substr(0, eq) + "'");
    const auto k = static_cast<std::size_t>(*kind);
    if (seen[k]) throw ParameterError("--agents: " + item.substr(0, eq) + " given twice");
    seen[k] = true;
    counts[k] = parse_nonnegative(std::string_view(item).substr(eq + 1), "--agents " + item.substr(0, eq));
    any = any || counts[k] > 0;
  }
  if (!any) throw ParameterError("--agents: no agents requested");
  return counts;
}

std::pair<std::size_t, std::size_t> parse_k_range(const std::string& spec) {
  const auto dots = spec.find("..");
  if (dots == std::string::npos) throw ParameterError("--k-range: expected LO..HI, got '" + spec + "'");
  const int lo = parse_nonnegative(std::string_view(spec).substr(0, dots), "--k-range");
  const int hi = parse_nonnegative(std::string_view(spec).substr(dots + 2), "--k-range");
  if (lo < 1 || lo > hi) throw ParameterError("--k-range: need 1 <= LO <= HI");
  return {static_cast<std::size_t>(lo), static_cast<std::size_t>(hi)};
}

json load_config_file(const fs::path& path) {
  std::ifstream f(path);
  if (!f) throw ConfigError("cannot read config file " + path.string());
  json j;
  try {
    f >> j;
  } catch (const json::exception& e) {
    throw ConfigError("config file " + path.string() + ": " + e.what());
  }
  check_keys(j, {"game", "agents", "simulate", "analyze", "serve", "export"}, "config file");
  return j;
}

BatteryConfig battery_config_from(const json& config) {
  BatteryConfig bc;
  if (config.contains("game")) {
    try {
      bc.game = config["game"].get<GameConfig>();
    } catch (const json::exception& e) {
      throw ConfigError(std::string("game section: ") + e.what());
    }
  }
  if (!config.contains("agents")) return bc;
  const json& agents = config["agents"];
  check_keys(agents, {"RA", "RT", "LRA", "LRT"}, "agents section");
  for (const auto& [name, a] : agents.items()) {
    AgentArchetype& arch = bc.archetype(*parse_archetype(name));
    check_keys(a, {"p_start", "p_end", "noise_sd", "contagion_sensitivity", "agent_sd", "latency"},
               "agents." + name);
    read_double(a, "p_start", arch.p_start);
    read_double(a, "p_end", arch.p_end);
    read_double(a, "noise_sd", arch.noise_sd);
    read_double(a, "contagion_sensitivity", arch.contagion_sensitivity);
    read_double(a, "agent_sd", arch.agent_sd);
    if (a.contains("latency")) {
      const json& l = a["latency"];
      check_keys(l, {"a", "k", "round1_inflation", "lognormal_sd", "group_offset_ms"},
                 "agents." + name + ".latency");
      read_double(l, "a", arch.latency.a);
      read_double(l, "k", arch.latency.k);
      read_double(l, "round1_inflation", arch.latency.round1_inflation);
      read_double(l, "lognormal_sd", arch.latency.lognormal_sd);
      read_double(l, "group_offset_ms", arch.latency.group_offset_ms);
    }
    for (double p : {arch.p_start, arch.p_end}) {
      if (!(p >= 0.0 && p <= 1.0)) throw ConfigError("agents." + name + ": probabilities must be in [0,1]");
    }
    if (arch.noise_sd < 0 || arch.agent_sd < 0) throw ConfigError("agents." + name + ": sd must be >= 0");
    try {
      arch.latency.validate();
    } catch (const Error& e) {
      throw ConfigError("agents." + name + ".latency: " + e.what());
    }
  }
  return bc;
}

fs::path labels_path_for(const fs::path& logs) {
  fs::path p = logs;
  p.replace_extension(".labels.csv");
  return p;
}

void cmd_simulate(const SimulateOptions& options, const BatteryConfig& config, std::ostream& log) {
  if (options.out.empty()) throw ParameterError("--out is required");
  const auto battery = run_battery(options.counts, options.seed, config);
  write_text_file(options.out, serialize_sessions(logs_of(battery)));
  write_text_file(labels_path_for(options.out), labels_text(battery));

  std::array<double, 4> rho_sum{};
  std::array<int, 4> n{};
  int infections = 0;
  for (const auto& s : battery) {
    const auto sum = summarize(s.log);
    infections += sum.infection_count;
    rho_sum[static_cast<std::size_t>(s.truth)] += sum.mean_rho;
    ++n[static_cast<std::size_t>(s.truth)];
  }
  log << "sessions " << battery.size() << "\n";
  log << "infections " << infections << "\n";
  for (auto k : kAllArchetypes) {
    const auto i = static_cast<std::size_t>(k);
    if (n[i] == 0) continue;
    log << "mean_rho " << archetype_name(k) << " " << format_double(rho_sum[i] / n[i]) << "\n";
  }
  log << "wrote " << options.out.string() << " and " << labels_path_for(options.out).string() << "\n";
}

void cmd_analyze(const AnalyzeOptions& options, std::ostream& log) {
  if (options.input.empty()) throw ParameterError("--input is required");
  if (options.out_dir.empty()) throw ParameterError("--out-dir is required");
  if (!fs::exists(options.input)) throw ConfigError("input " + options.input.string() + " does not exist");
  const auto sessions = parse_session_logs(read_text_file(options.input));
  const auto res = analyze(sessions, options.analysis);
  write_analysis(res, options.analysis, options.out_dir);

  log << "sessions " << sessions.size() << "\n";
  log << "selected_K " << res.elbow.selected << "\n";
  for (std::size_t c = 0; c < res.clustering.clusters; ++c) {
    const auto& l = res.labeling.labels[c];
    log << "cluster " << c << " size " << res.labeling.sizes[c] << " label "
        << (l ? std::string(archetype_name(*l)) : "-") << " median_rho "
        << format_double(res.labeling.median_rho[c]) << " slope " << format_double(res.labeling.slope[c])
        << "\n";
  }
  if (options.labels) {
    std::map<std::string, ArchetypeKind> truth;
    std::stringstream ss(read_text_file(*options.labels));
    std::string line;
    while (std::getline(ss, line)) {
      if (line.empty()) continue;
      const auto comma = line.find(',');
      const auto kind = comma == std::string::npos ? std::nullopt : parse_archetype(line.substr(comma + 1));
      if (!kind) throw ParseError("labels file: bad line '" + line + "'");
      truth[line.substr(0, comma)] = *kind;
    }
    std::vector<std::uint32_t> t;
    for (const auto& s : sessions) {
      const auto it = truth.find(s.session_id);
      if (it == truth.end()) throw ParseError("labels file has no entry for " + s.session_id);
      t.push_back(static_cast<std::uint32_t>(it->second));
    }
    log << "matched_accuracy "
        << format_double(matched_accuracy(res.clustering.assignment, t, res.clustering.clusters)) << "\n";
  }
  log << "wrote " << options.out_dir.string() << "\n";
}

void cmd_serve(const ServeOptions& options, std::ostream& log) {
  StoreOptions so;
  so.data_dir = options.data_dir;
  so.abandon_after_ms = options.timeout_ms;
  so.game = options.game;
  SessionStore store(so);

  httplib::Server server;
  // SO_REUSEADDR only: the default SO_REUSEPORT would let a second server
  // share a port that is already serving.
  server.set_socket_options([](socket_t sock) {
    int yes = 1;
    setsockopt(sock, SOL_SOCKET, SO_REUSEADDR, &yes, sizeof yes);
  });
  install_routes(server, store);
  int port = options.port;
  if (port == 0) {
    port = server.bind_to_any_port(options.host);
    if (port < 0) throw EnvironmentError("cannot bind " + options.host);
  } else if (!server.bind_to_port(options.host, port)) {
    throw EnvironmentError("cannot bind " + options.host + ":" + std::to_string(port) +
                           " (port in use?)");
  }
  log << "listening on " << options.host << ":" << port << " data " << options.data_dir.string()
      << " sessions " << store.size() << std::endl;

  g_stop.store(false);
  std::signal(SIGINT, on_signal);
  std::signal(SIGTERM, on_signal);
  std::thread watcher([&server] {
    while (!g_stop.load()) std::this_thread::sleep_for(std::chrono::milliseconds(100));
    server.stop();
  });
  server.listen_after_bind();
  g_stop.store(true);
  watcher.join();
  log << "stopped" << std::endl;
}

void cmd_export(const ExportOptions& options, std::ostream& out) {
  if (!fs::is_directory(options.data_dir)) {
    throw ConfigError("data directory " + options.data_dir.string() + " does not exist");
  }
  StoreOptions so;
  so.data_dir = options.data_dir;
  so.adopt_saved_game = true;
  SessionStore store(so);
  const std::string text = store.export_jsonl(options.since);
  if (options.out.empty()) {
    out << text;
  } else {
    write_text_file(options.out, text);
  }
}

}  // namespace farmrisk::cli
