#include <cstdlib>
#include <iostream>

#include <CLI11.hpp>

#include "commands.hpp"
#include "farmrisk/common/error.hpp"

using namespace farmrisk;
using namespace farmrisk::cli;
using json = nlohmann::json;

namespace {

template <typename T>
void from_section(const json& config, const char* section, const char* key, T& out) {
  if (!config.contains(section) || !config[section].contains(key)) return;
  try {
    out = config[section][key].get<T>();
  } catch (const json::exception& e) {
    throw ConfigError(std::string(section) + "." + key + ": " + e.what());
  }
}

void check_section(const json& config, const char* section, std::initializer_list<const char*> keys) {
  if (!config.contains(section)) return;
  if (!config[section].is_object()) throw ConfigError(std::string(section) + " must be an object");
  for (const auto& [k, v] : config[section].items()) {
    bool ok = false;
    for (const char* a : keys) ok = ok || k == a;
    if (!ok) throw ConfigError("unknown key '" + k + "' in " + section);
  }
}

const char* env(const char* name) {
  const char* v = std::getenv(name);
  return v && *v ? v : nullptr;
}

std::int64_t parse_env_int(const char* name, const char* value) {
  try {
    std::size_t pos = 0;
    const long long v = std::stoll(value, &pos);
    if (pos != std::string(value).size()) throw std::invalid_argument(name);
    return v;
  } catch (const std::exception&) {
    throw ConfigError(std::string(name) + " must be an integer");
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Farm biosecurity game experiments: simulate agents, analyze logs, serve the game API."};
  app.require_subcommand(1);

  std::string config_path;
  std::string agents, out, input, out_dir, labels, k_range, host, data_dir;
  std::uint64_t seed = 0;
  std::size_t k_neighbors = 20;
  int restarts = 20, port = 8080, bootstrap = 1000;
  std::int64_t timeout_min = 30, since = 0;
  bool no_plots = false;

  auto* sim = app.add_subcommand("simulate", "Play a battery of synthetic agents");
  sim->add_option("--config", config_path, "JSON config file");
  auto* o_agents = sim->add_option("--agents", agents, "Counts, e.g. RA=250,RT=250,LRA=250,LRT=250");
  auto* o_sim_seed = sim->add_option("--seed", seed, "Battery seed");
  auto* o_sim_out = sim->add_option("--out", out, "Output JSON Lines file");

  auto* ana = app.add_subcommand("analyze", "Run the analysis pipeline on session logs");
  ana->add_option("--config", config_path, "JSON config file");
  auto* o_input = ana->add_option("--input", input, "Session logs (JSON Lines)");
  auto* o_k = ana->add_option("--k-neighbors", k_neighbors, "Isomap neighbors");
  auto* o_range = ana->add_option("--k-range", k_range, "Cluster counts to try, LO..HI");
  auto* o_ana_seed = ana->add_option("--seed", seed, "Clustering and bootstrap seed");
  auto* o_out_dir = ana->add_option("--out-dir", out_dir, "Directory for CSV and SVG output");
  auto* o_labels = ana->add_option("--labels", labels, "Ground-truth labels file to score against");
  auto* o_restarts = ana->add_option("--restarts", restarts, "K-means restarts");
  auto* o_boot = ana->add_option("--bootstrap", bootstrap, "Bootstrap resamples for CIs");
  auto* o_no_plots = ana->add_flag("--no-plots", no_plots, "Skip SVG output");

  auto* srv = app.add_subcommand("serve", "Serve the HTTP game API");
  srv->add_option("--config", config_path, "JSON config file");
  auto* o_host = srv->add_option("--host", host, "Bind address");
  auto* o_port = srv->add_option("--port", port, "Port (0 picks a free one)");
  auto* o_srv_dir = srv->add_option("--data-dir", data_dir, "Session log directory");
  auto* o_timeout = srv->add_option("--timeout-min", timeout_min, "Abandon idle sessions after this many minutes");

  auto* exp = app.add_subcommand("export", "Write complete sessions from a data directory as JSON Lines");
  exp->add_option("--config", config_path, "JSON config file");
  auto* o_exp_dir = exp->add_option("--data-dir", data_dir, "Session log directory");
  auto* o_since = exp->add_option("--since", since, "Only sessions created at or after this time (ms)");
  auto* o_exp_out = exp->add_option("--out", out, "Output file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kUsage;
  }

  try {
    const json config = config_path.empty() ? json::object() : load_config_file(config_path);

    if (sim->parsed()) {
      check_section(config, "simulate", {"agents", "seed", "out"});
      SimulateOptions so;
      std::string a;
      from_section(config, "simulate", "agents", a);
      from_section(config, "simulate", "seed", so.seed);
      std::string o;
      from_section(config, "simulate", "out", o);
      if (o_agents->count()) a = agents;
      if (o_sim_seed->count()) so.seed = seed;
      if (o_sim_out->count()) o = out;
      if (a.empty()) throw ParameterError("--agents is required");
      so.counts = parse_agent_counts(a);
      so.out = o;
      cmd_simulate(so, battery_config_from(config), std::cout);
    } else if (ana->parsed()) {
      check_section(config, "analyze",
                    {"input", "k_neighbors", "k_range", "seed", "out_dir", "labels", "restarts",
                     "bootstrap", "no_plots"});
      AnalyzeOptions ao;
      std::string in, od, lb, kr = "1..10";
      auto& an = ao.analysis;
      from_section(config, "analyze", "input", in);
      from_section(config, "analyze", "out_dir", od);
      from_section(config, "analyze", "labels", lb);
      from_section(config, "analyze", "k_range", kr);
      from_section(config, "analyze", "k_neighbors", an.neighbors);
      from_section(config, "analyze", "seed", an.seed);
      from_section(config, "analyze", "restarts", an.restarts);
      from_section(config, "analyze", "bootstrap", an.bootstrap_resamples);
      bool np = false;
      from_section(config, "analyze", "no_plots", np);
      if (o_input->count()) in = input;
      if (o_out_dir->count()) od = out_dir;
      if (o_labels->count()) lb = labels;
      if (o_range->count()) kr = k_range;
      if (o_k->count()) an.neighbors = k_neighbors;
      if (o_ana_seed->count()) an.seed = seed;
      if (o_restarts->count()) an.restarts = restarts;
      if (o_boot->count()) an.bootstrap_resamples = bootstrap;
      if (o_no_plots->count()) np = no_plots;
      if (an.neighbors < 1) throw ParameterError("--k-neighbors must be >= 1");
      if (an.restarts < 1 || an.bootstrap_resamples < 1) {
        throw ParameterError("--restarts and --bootstrap must be >= 1");
      }
      std::tie(an.k_min, an.k_max) = parse_k_range(kr);
      an.plots = !np;
      ao.input = in;
      ao.out_dir = od;
      if (!lb.empty()) ao.labels = lb;
      cmd_analyze(ao, std::cout);
    } else if (srv->parsed()) {
      // Precedence: flag, then environment, then config file.
      check_section(config, "serve", {"host", "port", "data_dir", "timeout_min"});
      ServeOptions so;
      so.game = battery_config_from(config).game;
      std::int64_t tmin = 30;
      std::string dd = so.data_dir.string();
      from_section(config, "serve", "host", so.host);
      from_section(config, "serve", "port", so.port);
      from_section(config, "serve", "data_dir", dd);
      from_section(config, "serve", "timeout_min", tmin);
      if (const char* v = env("FARMRISK_PORT")) so.port = static_cast<int>(parse_env_int("FARMRISK_PORT", v));
      if (const char* v = env("FARMRISK_DATA_DIR")) dd = v;
      if (const char* v = env("FARMRISK_TIMEOUT_MIN")) tmin = parse_env_int("FARMRISK_TIMEOUT_MIN", v);
      if (const char* v = env("FARMRISK_GAME_CONFIG")) so.game = load_game_config(v);
      if (o_host->count()) so.host = host;
      if (o_port->count()) so.port = port;
      if (o_srv_dir->count()) dd = data_dir;
      if (o_timeout->count()) tmin = timeout_min;
      if (so.port < 0 || so.port > 65535) throw ParameterError("--port must be in 0..65535");
      if (tmin < 1) throw ParameterError("--timeout-min must be >= 1");
      so.data_dir = dd;
      so.timeout_ms = tmin * 60 * 1000;
      cmd_serve(so, std::cout);
    } else if (exp->parsed()) {
      check_section(config, "export", {"data_dir", "since", "out"});
      ExportOptions eo;
      std::string dd = eo.data_dir.string(), o;
      std::int64_t s = 0;
      bool has_since = config.contains("export") && config["export"].contains("since");
      from_section(config, "export", "data_dir", dd);
      from_section(config, "export", "since", s);
      from_section(config, "export", "out", o);
      if (const char* v = env("FARMRISK_DATA_DIR")) dd = v;
      if (o_exp_dir->count()) dd = data_dir;
      if (o_since->count()) {
        s = since;
        has_since = true;
      }
      if (o_exp_out->count()) o = out;
      eo.data_dir = dd;
      if (has_since) eo.since = s;
      eo.out = o;
      cmd_export(eo, std::cout);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    if (dynamic_cast<const ConnectivityError*>(&e)) {
      std::cerr << "hint: rerun with a larger --k-neighbors\n";
    }
    return exit_code_for(e);
  }
  return kOk;
}
