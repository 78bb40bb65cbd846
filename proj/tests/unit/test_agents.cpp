#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "farmrisk/common/error.hpp"
#include "farmrisk//agents/battery.hpp"
#include "farmrisk/metrics/rho.hpp"
#include "farmrisk/stats/descriptive.hpp"

using namespace farmrisk;

TEST_CASE("invest probability ramp") {
  const auto ra = AgentArchetype::defaults(ArchetypeKind::kRA);
  CHECK(invest_probability(ra.p_start, ra.p_end, 1, 0.0, 0.0, false) == doctest::Approx(0.95));
  const auto lra = AgentArchetype::defaults(ArchetypeKind::kLRA);
  CHECK(invest_probability(lra.p_start, lra.p_end, 32, 0.0, 0.0, false) == doctest::Approx(0.90));
  CHECK(invest_probability(lra.p_start, lra.p_end, 1, 0.0, 0.0, false) == doctest::Approx(0.15));
  CHECK(invest_probability(0.5, 0.5, 10, 0.0, 0.2, true) == doctest::Approx(0.7));
  CHECK(invest_probability(0.5, 0.5, 10, 0.0, 0.2, false) == doctest::Approx(0.5));
  CHECK(invest_probability(0.9, 0.9, 3, 0.5, 0.0, false) == 1.0);
  CHECK(invest_probability(0.1, 0.1, 3, -0.5, 0.0, false) == 0.0);
}

TEST_CASE("archetype defaults") {
  const auto rt = AgentArchetype::defaults(ArchetypeKind::kRT);
  CHECK(rt.p_start == 0.05);
  CHECK(rt.p_end == 0.05);
  const auto lrt = AgentArchetype::defaults(ArchetypeKind::kLRT);
  CHECK(lrt.p_start == 0.90);
  CHECK(lrt.p_end == 0.15);
  CHECK(AgentArchetype::defaults(ArchetypeKind::kRA).latency.a == 4.3068);
  CHECK(AgentArchetype::defaults(ArchetypeKind::kRA).latency.k == 0.3650);
  CHECK(AgentArchetype::defaults(ArchetypeKind::kLRA).latency.k == 0.2810);
  for (auto k : kAllArchetypes) CHECK(parse_archetype(archetype_name(k)) == k);
  CHECK_FALSE(parse_archetype("XX"));
}

TEST_CASE("decide holds at High and after turn 3") {
  Rng rng = make_rng(1);
  for (int i = 0; i < 100; ++i) {
    CHECK(decide(1.0, 1, BiosecurityLevel::kHigh, rng) == Action::kHold);
    CHECK(decide(1.0, 4, BiosecurityLevel::kNone, rng) == Action::kHold);
    CHECK(decide(1.0, 2, BiosecurityLevel::kLow, rng) == Action::kInvest);
    CHECK(decide(0.0, 1, BiosecurityLevel::kNone, rng) == Action::kHold);
  }
}

TEST_CASE("latency model") {
  LatencyModel m;
  m.a = 4.3068;
  m.k = 0.3650;
  m.lognormal_sd = 0.0;
  Rng rng = make_rng(2);
  CHECK(sample_latency(m, 2, rng) == doctest::Approx(4306.8 * std::pow(2.0, -0.3650)));
  CHECK(sample_latency(m, 2, rng) == doctest::Approx(3343.0).epsilon(5e-4));

  LatencyModel flat;
  flat.k = 0.0;
  for (int t = 2; t <= 32; ++t) CHECK(sample_latency(flat, t, rng) == doctest::Approx(flat.a * 1000.0));

  LatencyModel inflated = m;
  inflated.round1_inflation = 2.0;
  CHECK(sample_latency(inflated, 1, rng) == doctest::Approx(2.0 * m.a * 1000.0));

  LatencyModel bad;
  bad.round1_inflation = 0.5;
  CHECK_THROWS_AS(bad.validate(), ParameterError);
}

TEST_CASE("latency median follows the curve under noise") {
  LatencyModel m;
  m.a = 4.0;
  m.k = 0.3;
  m.lognormal_sd = 0.3;
  Rng rng = make_rng(3);
  for (int t : {1, 2, 10, 32}) {
    std::vector<double> xs;
    for (int i = 0; i < 4001; ++i) xs.push_back(sample_latency(m, t, rng));
    CHECK(median(xs) == doctest::Approx(m.curve_ms(t)).epsilon(0.03));
  }
}

TEST_CASE("run_battery shape and determinism") {
  const BatteryConfig cfg;
  const auto a = run_battery({1, 1, 1, 1}, 9, cfg);
  const auto b = run_battery({1, 1, 1, 1}, 9, cfg);
  REQUIRE(a.size() == 4);
  for (std::size_t i = 0; i < 4; ++i) {
    CHECK(a[i].log == b[i].log);
    CHECK(a[i].log.complete());
    CHECK(a[i].log.rounds.size() == 32);
    CHECK(a[i].truth == kAllArchetypes[i]);
    CHECK(a[i].log.player_kind == PlayerKind::kAgent);
    CHECK(a[i].log.archetype == std::string(archetype_name(kAllArchetypes[i])));
  }
  CHECK(labels_text(a) == labels_text(b));
  CHECK(labels_text(a).find(a[2].log.session_id + ",LRA") != std::string::npos);
  CHECK_FALSE(run_battery({1, 0, 0, 0}, 10, cfg)[0].log == a[0].log);
}

TEST_CASE("always-investor in a contagion-free world has rho 1 everywhere") {
  BatteryConfig cfg;
  cfg.game.infection.rate_low = 0.0;
  cfg.game.infection.rate_high = 0.0;
  auto& ra = cfg.archetype(ArchetypeKind::kRA);
  ra.p_start = ra.p_end = 1.0;
  ra.agent_sd = 0.0;
  ra.noise_sd = 0.0;
  for (const auto& s : run_battery({3, 0, 0, 0}, 4, cfg)) {
    const RiskTrajectory t = trajectory(s.log);
    CHECK(std::all_of(t.rho.begin(), t.rho.end(), [](double r) { return r == 1.0; }));
  }
}

TEST_CASE("default RA invests at its ramp frequency") {
  BatteryConfig cfg;
  cfg.game.infection.rate_low = 0.0;
  cfg.game.infection.rate_high = 0.0;
  cfg.archetype(ArchetypeKind::kRA).agent_sd = 0.0;
  const auto logs = run_battery({200, 0, 0, 0}, 5, cfg);
  double sum = 0;
  int n = 0;
  for (const auto& s : logs) {
    for (double r : trajectory(s.log).rho) sum += r, ++n;
  }
  CHECK(sum / n == doctest::Approx(0.95).epsilon(0.01));
}

TEST_CASE("expected rho tracks the ramp") {
  // Noise-free agents without infection: round-r mean rho equals p_r within
  // binomial error.
  BatteryConfig cfg;
  cfg.game.infection.rate_low = 0.0;
  cfg.game.infection.rate_high = 0.0;
  for (auto k : kAllArchetypes) {
    cfg.archetype(k).agent_sd = 0.0;
    cfg.archetype(k).noise_sd = 0.0;
  }
  const auto logs = run_battery({0, 0, 1000, 1000}, 6, cfg);
  for (ArchetypeKind k : {ArchetypeKind::kLRA, ArchetypeKind::kLRT}) {
    const auto& arch = cfg.archetype(k);
    for (int r : {1, 8, 16, 24, 32}) {
      double sum = 0;
      int n = 0;
      for (const auto& s : logs) {
        if (s.truth != k) continue;
        sum += rho_round(s.log.rounds[static_cast<std::size_t>(r - 1)].final_level, 6);
        ++n;
      }
      const double p = invest_probability(arch.p_start, arch.p_end, r, 0.0, 0.0, false);
      // rho is a mean of 3 Bernoulli(p); 4 standard errors.
      const double se = std::sqrt(p * (1 - p) / 3.0 / n);
      CHECK(std::abs(sum / n - p) <= 4 * se + 1e-12);
    }
  }
}

TEST_CASE("learning groups are slower per treatment") {
  const BatteryConfig cfg;
  const auto logs = run_battery({50, 50, 50, 50}, 8, cfg);
  std::array<std::vector<double>, 4> per_group;
  for (const auto& s : logs) {
    for (const auto& r : s.log.rounds) {
      per_group[static_cast<std::size_t>(s.truth)].push_back(static_cast<double>(r.latency_ms()));
    }
  }
  const double ra = median(per_group[0]), rt = median(per_group[1]);
  const double lra = median(per_group[2]), lrt = median(per_group[3]);
  CHECK(std::min(lra, lrt) > std::max(ra, rt));
}
