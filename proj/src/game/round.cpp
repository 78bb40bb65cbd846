#include "farmrisk/game/round.hpp"

#include <cmath>
#include <cstdio>

#include "farmrisk/common/error.hpp"

namespace farmrisk {

Observation player_view(const RoundState& state, const GameConfig& config) {
  Observation obs;
  obs.round_index = state.round_index;
  obs.turn = state.turn;
  obs.budget = state.budget;
  obs.player_level = state.player().biosecurity;
  obs.terminated = state.terminated;
  obs.player_infected = state.infected_player;
  obs.farms.reserve(state.farms.size());
  for (const Farm& f : state.farms) {
    FarmView v;
    v.id = f.id;
    v.x = f.x;
    v.y = f.y;
    v.is_player = f.player_controlled;
    if (f.player_controlled || f.biosecurity_visible) v.biosecurity = f.biosecurity;
    if (f.player_controlled || f.infection_visible) v.infected = f.infected;
    obs.farms.push_back(v);
  }
  const Treatment& t = state.treatment;
  obs.message.kind = t.messaging;
  obs.message.contagion_level = t.contagion_rate;
  const double c = config.contagion_rate(t);
  if (t.messaging == Messaging::kGauge) {
    obs.message.gauge = c;
  } else {
    char buf[64];
    std::snprintf(buf, sizeof buf, "Contagion rate: %.0f%%", c * 100.0);
    obs.message.text = buf;
  }
  return obs;
}

nlohmann::ordered_json to_json(const Observation& obs) {
  nlohmann::ordered_json farms = nlohmann::ordered_json::array();
  for (const FarmView& f : obs.farms) {
    nlohmann::ordered_json jf;
    jf["id"] = f.id;
    jf["x"] = f.x;
    jf["y"] = f.y;
    jf["player"] = f.is_player;
    if (f.biosecurity) {
      jf["biosecurity"] = std::string(to_string(*f.biosecurity));
    } else {
      jf["biosecurity"] = "hidden";
    }
    if (f.infected) {
      jf["infected"] = *f.infected;
    } else {
      jf["infected"] = "hidden";
    }
    farms.push_back(std::move(jf));
  }
  nlohmann::ordered_json msg;
  msg["kind"] = obs.message.kind == Messaging::kGauge ? "gauge" : "verbal";
  if (obs.message.kind == Messaging::kGauge) {
    msg["value"] = obs.message.gauge;
  } else {
    msg["text"] = obs.message.text;
  }
  nlohmann::ordered_json j;
  j["round"] = obs.round_index;
  j["turn"] = obs.turn;
  j["budget"] = obs.budget;
  j["level"] = std::string(to_string(obs.player_level));
  j["terminated"] = obs.terminated;
  j["player_infected"] = obs.player_infected;
  j["message"] = std::move(msg);
  j["farms"] = std::move(farms);
  return j;
}

Round::Round(std::uint64_t seed, const Treatment& treatment, const GameConfig& config,
             int round_index)
    : config_(config),
      state_(generate_world(seed, treatment, config, round_index)),
      spread_rng_(make_rng(derive_seed(seed, "spread"))) {
  const auto n = state_.farms.size();
  kernel_.resize(n * n);
  for (std::size_t j = 0; j < n; ++j) {
    if (state_.farms[j].infected) fill_kernel_column(j);
  }
}

void Round::fill_kernel_column(std::size_t j) {
  const auto n = state_.farms.size();
  for (std::size_t i = 0; i < n; ++i) {
    kernel_[i * n + j] =
        std::exp(-farm_distance(state_.farms[i], state_.farms[j]) / config_.infection.distance_scale);
  }
}

double Round::current_infection_probability(int farm_id) const {
  const auto n = state_.farms.size();
  const auto i = static_cast<std::size_t>(farm_id);
  const Farm& target = state_.farms[i];
  if (target.infected) return 1.0;
  const double c = config_.contagion_rate(state_.treatment);
  const double s = config_.infection.modifiers[static_cast<std::size_t>(beta(target.biosecurity))];
  double escape = 1.0;
  for (std::size_t j = 0; j < n; ++j) {
    if (state_.farms[j].infected) escape *= 1.0 - pair_transmission(c, kernel_[i * n + j], s);
  }
  return 1.0 - escape;
}

TurnEvents Round::step(Action action) {
  if (state_.terminated) throw StateError("round already terminated");
  Farm& player = state_.player();
  if (action == Action::kInvest) {
    if (player.biosecurity == BiosecurityLevel::kHigh) {
      throw RuleError("cannot invest: biosecurity already at High");
    }
    player.biosecurity = level_from_beta(beta(player.biosecurity) + 1);
    state_.budget -= config_.invest_cost;
  }

  TurnEvents ev;
  ev.turn = state_.turn;
  ev.action = action;
  ev.level_after = player.biosecurity;

  // Synchronous update: every susceptible farm sees the infected set at the
  // start of the turn; one uniform draw per susceptible farm in id order.
  std::vector<int> newly;
  for (const Farm& f : state_.farms) {
    if (f.infected) continue;
    const double p = current_infection_probability(f.id);
    const double u = uniform01(spread_rng_);
    if (!f.player_controlled && !config_.npc_spread) continue;
    if (u < p) newly.push_back(f.id);
  }
  for (int id : newly) {
    state_.farms[static_cast<std::size_t>(id)].infected = true;
    fill_kernel_column(static_cast<std::size_t>(id));
    if (id == state_.player_id) {
      ev.player_infected = true;
    } else {
      ev.npc_infections.push_back(id);
    }
  }

  if (ev.player_infected) {
    state_.infected_player = true;
    state_.terminated = true;
  } else if (state_.turn == kTurnsPerRound) {
    state_.terminated = true;
  } else {
    ++state_.turn;
  }
  if (state_.terminated) state_.budget = round_score();
  ev.round_over = state_.terminated;
  return ev;
}

int Round::round_score() const {
  return config_.round_score(beta(player_level()), state_.infected_player);
}

}  // namespace farmrisk
