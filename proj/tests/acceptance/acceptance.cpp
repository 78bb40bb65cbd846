// Acceptance run: prints one PASS/FAIL line per criterion and exits nonzero
// if any fails.
#include <unistd.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iterator>
#include <sstream>
#include <string>
#include <vector>

#include "../../tools/commands.hpp"
#include "farmrisk/agents/battery.hpp"
#include "farmrisk/agents/latency.hpp"
#include "farmrisk/cluster/archetypes.hpp"
#include "farmrisk/cluster/elbow.hpp"
#include "farmrisk/cluster/kmeans.hpp"
#include "farmrisk/common/error.hpp"
#include "farmrisk/common/rng.hpp"
#include "farmrisk/game/event_log.hpp"
#include "farmrisk/game/session.hpp"
#include "farmrisk/manifold/isomap.hpp"
#include "farmrisk/manifold/mds.hpp"
#include "farmrisk/metrics/rho.hpp"
#include "farmrisk/stats/descriptive.hpp"
#include "farmrisk/stats/mann_whitney.hpp"
#include "farmrisk/stats/power_law.hpp"
#include "farmrisk/stats/sensitivity.hpp"

namespace fs = std::filesystem;
using namespace farmrisk;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

// 1. rho over every (level, tau) and an all-invest uninfected session.
Outcome rho_conformance() {
  int checked = 0, bad = 0;
  for (int beta = 0; beta <= 3; ++beta) {
    for (int tau = 1; tau <= 6; ++tau) {
      const int opportunities = std::min(3, tau);
      ++checked;
      if (beta > opportunities) {
        try {
          (void)rho_round(level_from_beta(beta), tau);
          ++bad;
        } catch (const DomainError&) {
        }
        continue;
      }
      if (rho_round(level_from_beta(beta), tau) != static_cast<double>(beta) / opportunities) ++bad;
    }
  }
  GameConfig config;
  config.infection.rate_low = config.infection.rate_high = 0.0;
  AgentArchetype always = AgentArchetype::defaults(ArchetypeKind::kRA);
  always.p_start = always.p_end = 1.0;
  always.agent_sd = 0.0;
  const SessionLog log = run_agent_session(always, 11, "all-invest", 0, config);
  const RiskTrajectory tr = trajectory(log);
  const bool ones = tr.rho.size() == 32 &&
                    std::all_of(tr.rho.begin(), tr.rho.end(), [](double r) { return r == 1.0; });
  const bool uninfected =
      std::none_of(log.rounds.begin(), log.rounds.end(), [](const RoundRecord& r) { return r.infected; });
  return {bad == 0 && ones && uninfected,
          fmt("%d (level,tau) pairs, %d mismatches; all-ones trajectory %s", checked, bad,
              ones && uninfected ? "yes" : "no")};
}

Matrix rho_matrix(const std::vector<SessionLog>& logs) {
  std::vector<std::vector<double>> rows;
  for (const auto& t : trajectories(logs)) rows.push_back(t.rho);
  return Matrix::from_rows(rows);
}

// 2. Planted four-archetype recovery.
Outcome cluster_recovery() {
  BatteryConfig config;
  for (auto& a : config.archetypes) a.noise_sd = 0.1;
  int k4 = 0, accurate = 0;
  double worst = 1.0;
  std::string failures;
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const auto battery = run_battery({250, 250, 250, 250}, seed, config);
    std::vector<std::uint32_t> truth;
    for (const auto& s : battery) truth.push_back(static_cast<std::uint32_t>(s.truth));
    try {
      const Embedding emb = isomap(rho_matrix(logs_of(battery)), {20, 2});
      const ElbowResult elbow = elbow_select(emb.coordinates, 1, 10, seed);
      KMeansOptions km;
      km.clusters = elbow.selected;
      km.seed = derive_seed(seed, static_cast<std::uint64_t>(km.clusters));
      const ClusteringResult cl = kmeans(emb.coordinates, km);
      const double acc = matched_accuracy(cl.assignment, truth, std::max<std::size_t>(cl.clusters, 4));
      if (elbow.selected == 4) ++k4;
      if (acc >= 0.9) ++accurate;
      worst = std::min(worst, acc);
      if (elbow.selected != 4 || acc < 0.9) {
        failures += fmt(" seed%llu:K=%zu,acc=%.3f", static_cast<unsigned long long>(seed),
                        elbow.selected, acc);
      }
    } catch (const Error& e) {
      worst = 0.0;
      failures += fmt(" seed%llu:%s", static_cast<unsigned long long>(seed), e.what());
    }
  }
  return {k4 >= 18 && accurate == 20,
          fmt("K=4 in %d/20 seeds, accuracy>=0.9 in %d/20 (min %.3f)", k4, accurate, worst) +
              failures};
}

// 3. Exact U distribution and p against enumeration of every split.
Outcome mann_whitney_oracle() {
  double max_err = 0.0;
  int cases = 0;
  for (std::size_t n = 1; n <= 6; ++n) {
    for (std::size_t m = 1; m <= 6; ++m) {
      const std::size_t total = n + m;
      std::vector<double> counts(n * m + 1, 0.0);
      std::vector<int> u_of_split;
      std::vector<std::uint32_t> splits;
      for (std::uint32_t mask = 0; mask < (1u << total); ++mask) {
        if (static_cast<std::size_t>(__builtin_popcount(mask)) != n) continue;
        // Values are the ranks 0..total-1; x takes the ranks in mask.
        int u = 0;
        for (std::size_t i = 0; i < total; ++i) {
          if (!(mask >> i & 1u)) continue;
          for (std::size_t j = 0; j < total; ++j) {
            if (!(mask >> j & 1u) && i > j) ++u;
          }
        }
        counts[static_cast<std::size_t>(u)] += 1.0;
        splits.push_back(mask);
        u_of_split.push_back(u);
      }
      const double nsplits = static_cast<double>(splits.size());
      const std::vector<double> dist = u_distribution(n, m);
      if (dist.size() != counts.size()) return {false, fmt("distribution size n=%zu m=%zu", n, m)};
      std::vector<double> enum_p(counts.size());
      for (std::size_t u = 0; u < counts.size(); ++u) {
        max_err = std::max(max_err, std::abs(dist[u] - counts[u] / nsplits));
        double lo = 0.0, hi = 0.0;
        for (std::size_t v = 0; v <= u; ++v) lo += counts[v];
        for (std::size_t v = u; v < counts.size(); ++v) hi += counts[v];
        enum_p[u] = std::min(1.0, 2.0 * std::min(lo, hi) / nsplits);
        max_err = std::max(max_err, std::abs(exact_two_sided_p(static_cast<double>(u), n, m) - enum_p[u]));
      }
      for (std::size_t s = 0; s < splits.size(); ++s) {
        std::vector<double> x, y;
        for (std::size_t i = 0; i < total; ++i) {
          (splits[s] >> i & 1u ? x : y).push_back(static_cast<double>(i));
        }
        const RankTestResult r = mann_whitney(x, y);
        if (r.method != RankMethod::kExactDP || r.u != u_of_split[s]) {
          return {false, fmt("mann_whitney disagrees at n=%zu m=%zu", n, m)};
        }
        max_err = std::max(max_err, std::abs(r.p_two_sided - enum_p[static_cast<std::size_t>(u_of_split[s])]));
        ++cases;
      }
    }
  }
  return {max_err <= 1e-12, fmt("%d splits over n,m<=6, max |error| %.2e", cases, max_err)};
}

struct LatencyRow {
  const char* name;
  double a, k;
};
constexpr LatencyRow kRows[] = {
    {"RA", 4.3068, 0.3650}, {"RT", 4.2603, 0.3321}, {"LRA", 4.2547, 0.2810}, {"LRT", 4.3152, 0.3282}};

// 4. Power-law recovery from the latency generator.
Outcome power_law_recovery() {
  constexpr int kPlayers = 250;
  double noiseless_err = 0.0;
  std::string per_row;
  bool ok = true;
  for (const auto& row : kRows) {
    LatencyModel model;
    model.a = row.a;
    model.k = row.k;
    std::vector<double> ts, ys;
    Rng rng = make_rng(0);
    for (int t = 2; t <= 32; ++t) {
      ts.push_back(t);
      ys.push_back(sample_latency(model, t, rng) / 1000.0);
    }
    const PowerLawFit exact = fit_power_law(ts, ys);
    noiseless_err = std::max({noiseless_err, std::abs(exact.a - row.a), std::abs(exact.k - row.k)});

    model.lognormal_sd = 0.1;
    int within = 0;
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
      Rng noisy = make_rng(derive_seed(seed, row.name));
      // One group of players; the fit target is the per-round median.
      std::vector<std::vector<double>> by_round(32);
      for (int p = 0; p < kPlayers; ++p) {
        for (int t = 1; t <= 32; ++t) {
          by_round[static_cast<std::size_t>(t - 1)].push_back(sample_latency(model, t, noisy) / 1000.0);
        }
      }
      std::vector<double> medians;
      for (int t = 2; t <= 32; ++t) medians.push_back(median(by_round[static_cast<std::size_t>(t - 1)]));
      if (std::abs(fit_power_law(ts, medians).k - row.k) <= 0.02) ++within;
    }
    ok = ok && within >= 95;
    per_row += fmt(" %s:%d/100", row.name, within);
  }
  ok = ok && noiseless_err <= 1e-6;
  return {ok, fmt("noiseless max error %.2e; k within 0.02 over seeds:", noiseless_err) + per_row};
}

// 5. Isomap on a line and MDS on an equilateral triangle.
Outcome isomap_exactness() {
  // Uneven spacing along a fixed direction in 32-D.
  std::vector<double> dir(32);
  double norm = 0.0;
  for (std::size_t d = 0; d < 32; ++d) {
    dir[d] = 1.0 + static_cast<double>(d % 5);
    norm += dir[d] * dir[d];
  }
  for (auto& v : dir) v /= std::sqrt(norm);
  std::vector<double> arc;
  double s = 0.0;
  for (int i = 0; i < 10; ++i) {
    arc.push_back(s);
    s += 1.0 + 0.25 * i;
  }
  const double mean = [&] {
    double acc = 0.0;
    for (double a : arc) acc += a;
    return acc / static_cast<double>(arc.size());
  }();
  std::vector<std::vector<double>> rows;
  for (double a : arc) {
    std::vector<double> r(32);
    for (std::size_t d = 0; d < 32; ++d) r[d] = 0.5 + a * dir[d];
    rows.push_back(r);
  }
  const Embedding line = isomap(Matrix::from_rows(rows), {2, 2});
  double err_pos = 0.0, err_neg = 0.0;
  for (std::size_t i = 0; i < arc.size(); ++i) {
    err_pos = std::max(err_pos, std::abs(line.coordinates(i, 0) - (arc[i] - mean)));
    err_neg = std::max(err_neg, std::abs(line.coordinates(i, 0) + (arc[i] - mean)));
  }
  const double line_err = std::min(err_pos, err_neg);

  const Matrix tri = Matrix::from_rows({{0, 1, 1}, {1, 0, 1}, {1, 1, 0}});
  const Embedding e = classical_mds(tri, 2);
  double tri_err = 0.0;
  for (std::size_t i = 0; i < 3; ++i) {
    for (std::size_t j = 0; j < 3; ++j) {
      const double dx = e.coordinates(i, 0) - e.coordinates(j, 0);
      const double dy = e.coordinates(i, 1) - e.coordinates(j, 1);
      tri_err = std::max(tri_err, std::abs(std::hypot(dx, dy) - tri(i, j)));
    }
  }
  return {line_err <= 1e-9 && tri_err <= 1e-9,
          fmt("line max error %.2e, triangle max error %.2e", line_err, tri_err)};
}

std::vector<SessionLog> contagion_population(std::uint64_t seed, int players) {
  AgentArchetype a = AgentArchetype::defaults(ArchetypeKind::kRT);
  a.p_start = a.p_end = 0.3;
  a.contagion_sensitivity = 0.4;
  const GameConfig config;
  std::vector<SessionLog> out;
  for (int i = 0; i < players; ++i) {
    out.push_back(run_agent_session(a, derive_seed(seed, static_cast<std::uint64_t>(i)),
                                    "c" + std::to_string(i), 0, config));
  }
  return out;
}

// Invests on turns 1..3 with 0.3, or 0.8 when contagion is Low and
// biosecurity uncertainty is High.
std::vector<SessionLog> conditioned_population(std::uint64_t seed, int players) {
  const GameConfig config;
  std::vector<SessionLog> out;
  for (int i = 0; i < players; ++i) {
    const std::uint64_t session_seed = derive_seed(seed, static_cast<std::uint64_t>(i));
    Session s("u" + std::to_string(i), session_seed, PlayerKind::kAgent, std::nullopt, 0, config);
    Rng rng = make_rng(derive_seed(session_seed, "policy"));
    std::int64_t ts = 0;
    while (!s.complete()) {
      const Observation obs = s.view();
      const Treatment& t = s.current_round().state().treatment;
      const bool planted = t.contagion_rate == FactorLevel::kLow &&
                           t.biosecurity_uncertainty == FactorLevel::kHigh;
      const double p = planted ? 0.8 : 0.3;
      const Action act = obs.turn <= 3 && obs.player_level != BiosecurityLevel::kHigh &&
                                 uniform01(rng) < p
                             ? Action::kInvest
                             : Action::kHold;
      ts += 500;
      s.act(act, 500, 500, ts);
    }
    out.push_back(s.log());
  }
  return out;
}

// 6. Sensitivity analysis on planted effects.
Outcome sensitivity_pipeline() {
  constexpr int kPlayers = 100;
  int only_contagion = 0;
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const SensitivityReport r = sensitivity(treatment_mean_rho(contagion_population(seed, kPlayers)));
    bool ok = true;
    for (const auto& f : r.factors) ok = ok && f.significant == (f.factor == Factor::kContagionRate);
    if (ok) ++only_contagion;
  }
  int conditioned_ok = 0;
  for (std::uint64_t seed = 101; seed <= 120; ++seed) {
    const auto means = treatment_mean_rho(conditioned_population(seed, kPlayers));
    auto bio_flagged = [&](int level) {
      const auto rep = sensitivity(means, SensitivityCondition{Factor::kContagionRate, level});
      for (const auto& f : rep.factors) {
        if (f.factor == Factor::kBiosecurityUncertainty) return f.significant;
      }
      return false;
    };
    if (bio_flagged(0) && !bio_flagged(1)) ++conditioned_ok;
  }
  return {only_contagion >= 18 && conditioned_ok >= 18,
          fmt("only contagion flagged in %d/20 seeds; uncertainty flagged only under low contagion "
              "in %d/20 seeds",
              only_contagion, conditioned_ok)};
}

// 7. Risk-averse players get infected less often than risk-tolerant ones.
Outcome directional_property() {
  BatteryConfig config;
  for (auto& a : config.archetypes) {
    a.noise_sd = 0.0;
    a.agent_sd = 0.0;
    a.latency.lognormal_sd = 0.0;
  }
  const auto battery = run_battery({1000, 1000, 0, 0}, 2024, config);
  std::vector<double> ra, rt;
  for (const auto& s : battery) {
    const double infections = summarize(s.log).infection_count;
    (s.truth == ArchetypeKind::kRA ? ra : rt).push_back(infections);
  }
  const double med_ra = median(ra), med_rt = median(rt);
  const RankTestResult mw = mann_whitney(ra, rt);
  return {med_ra < med_rt && mw.p_two_sided < 0.01,
          fmt("median infections RA %.1f vs RT %.1f, U=%.0f, p=%.3g", med_ra, med_rt, mw.u,
              mw.p_two_sided)};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

// 8. Byte-identical CLI outputs and bit-exact replay.
Outcome determinism() {
  const fs::path root = fs::temp_directory_path() / ("farmrisk_acceptance_" + std::to_string(::getpid()));
  fs::remove_all(root);
  fs::create_directories(root);
  const BatteryConfig config;
  std::ostringstream sink;
  for (const char* run : {"a", "b"}) {
    cli::SimulateOptions sim;
    sim.counts = {40, 40, 40, 40};
    sim.seed = 7;
    sim.out = root / (std::string("logs_") + run + ".jsonl");
    cli::cmd_simulate(sim, config, sink);
    cli::AnalyzeOptions an;
    an.input = sim.out;
    an.out_dir = root / (std::string("out_") + run);
    an.analysis.seed = 3;
    an.analysis.bootstrap_resamples = 200;
    cli::cmd_analyze(an, sink);
  }
  int files = 0, differ = 0;
  auto compare = [&](const fs::path& a, const fs::path& b) {
    ++files;
    if (!fs::exists(a) || slurp(a) != slurp(b)) ++differ;
  };
  compare(root / "logs_a.jsonl", root / "logs_b.jsonl");
  for (const auto& name : analysis_csv_files()) compare(root / "out_a" / name, root / "out_b" / name);

  const auto logs = parse_session_logs(slurp(root / "logs_a.jsonl"));
  int replay_bad = 0;
  for (const auto& log : logs) {
    if (!(replay_session(log, config.game) == log)) ++replay_bad;
  }
  fs::remove_all(root);
  return {differ == 0 && replay_bad == 0 && !logs.empty(),
          fmt("%d files compared, %d differ; %zu sessions replayed, %d differ", files, differ,
              logs.size(), replay_bad)};
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    std::function<Outcome()> run;
    double budget_s;
  };
  const std::vector<Criterion> criteria = {
      {"rho metric conformance", rho_conformance, 1},
      {"planted four-cluster recovery", cluster_recovery, 120},
      {"Mann-Whitney exact vs enumeration", mann_whitney_oracle, 10},
      {"power-law recovery", power_law_recovery, 30},
      {"isomap exactness", isomap_exactness, 1},
      {"sensitivity pipeline", sensitivity_pipeline, 60},
      {"RA fewer infections than RT", directional_property, 120},
      {"determinism", determinism, 120},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool in_budget = secs <= criteria[i].budget_s;
    const bool pass = o.pass && in_budget;
    if (!pass) ++failed;
    std::printf("%s %zu %s: %s (%.1f s%s)\n", pass ? "PASS" : "FAIL", i + 1, criteria[i].name,
                o.detail.c_str(), secs, in_budget ? "" : ", over budget");
    std::fflush(stdout);
  }
  return failed == 0 ? 0 : 1;
}
