#include "farmrisk/game/config.hpp"

#include <cmath>
#include <fstream>
#include <string>

#include "farmrisk/common/error.hpp"

namespace farmrisk {

namespace {

bool is_probability(double p) { return std::isfinite(p) && p >= 0.0 && p <= 1.0; }

void check_distribution(const std::array<double, 4>& d, const char* name) {
  double sum = 0.0;
  for (double p : d) {
    if (!is_probability(p)) throw ConfigError(std::string(name) + ": entries must be in [0,1]");
    sum += p;
  }
  if (std::abs(sum - 1.0) > 1e-9) throw ConfigError(std::string(name) + ": must sum to 1");
}

}  // namespace

void InfectionModelParams::validate() const {
  if (!is_probability(rate_low) || !is_probability(rate_high)) {
    throw ConfigError("contagion rates must be probabilities");
  }
  // Equal rates are allowed so a contagion-free world (C = 0) can be configured.
  if (!(rate_low <= rate_high)) throw ConfigError("rate_low must be <= rate_high");
  if (!(distance_scale > 0.0) || !std::isfinite(distance_scale)) {
    throw ConfigError("distance_scale must be > 0");
  }
  if (modifiers[0] != 1.0) throw ConfigError("biosecurity modifier for None must be 1");
  for (std::size_t i = 0; i < modifiers.size(); ++i) {
    if (!is_probability(modifiers[i])) throw ConfigError("biosecurity modifiers must be in [0,1]");
    if (i > 0 && modifiers[i] > modifiers[i - 1]) {
      throw ConfigError("biosecurity modifiers must be non-increasing");
    }
  }
}

void GameConfig::validate() const {
  if (!(width > 0.0) || !(height > 0.0)) throw ConfigError("field dimensions must be > 0");
  if (farm_count < 2) throw ConfigError("farm_count must be >= 2");
  if (endowment < 0 || invest_cost < 0 || infection_penalty < 0) {
    throw ConfigError("money constants must be non-negative");
  }
  if (sim_dollars_per_usd <= 0) throw ConfigError("sim_dollars_per_usd must be > 0");
  infection.validate();
  check_distribution(npc_levels_low, "npc_levels_low");
  check_distribution(npc_levels_high, "npc_levels_high");
  if (!is_probability(mask_fraction_low) || !is_probability(mask_fraction_high)) {
    throw ConfigError("mask fractions must be in [0,1]");
  }
}

int GameConfig::hidden_count(FactorLevel uncertainty) const {
  const double f = uncertainty == FactorLevel::kHigh ? mask_fraction_high : mask_fraction_low;
  // The small epsilon keeps e.g. 0.6*49 = 29.399999... from flooring wrongly.
  return static_cast<int>(std::floor(f * npc_count() + 1e-9));
}

double GameConfig::contagion_rate(const Treatment& t) const {
  return t.contagion_rate == FactorLevel::kHigh ? infection.rate_high : infection.rate_low;
}

int GameConfig::round_score(int b, bool infected) const {
  const int base = endowment - invest_cost * b;
  if (!infected) return base;
  switch (accounting) {
    case RoundAccounting::kDeductPenalty: return base - infection_penalty;
    case RoundAccounting::kForfeitEndowment: return base - endowment - infection_penalty;
  }
  return base;
}

void to_json(nlohmann::json& j, const GameConfig& c) {
  j = nlohmann::json{
      {"width", c.width},
      {"height", c.height},
      {"farm_count", c.farm_count},
      {"endowment", c.endowment},
      {"invest_cost", c.invest_cost},
      {"infection_penalty", c.infection_penalty},
      {"sim_dollars_per_usd", c.sim_dollars_per_usd},
      {"infection",
       {{"rate_low", c.infection.rate_low},
        {"rate_high", c.infection.rate_high},
        {"distance_scale", c.infection.distance_scale},
        {"modifiers", c.infection.modifiers}}},
      {"npc_levels_low", c.npc_levels_low},
      {"npc_levels_high", c.npc_levels_high},
      {"mask_fraction_low", c.mask_fraction_low},
      {"mask_fraction_high", c.mask_fraction_high},
      {"npc_spread", c.npc_spread},
      {"accounting", c.accounting == RoundAccounting::kDeductPenalty ? "deduct_penalty"
                                                                     : "forfeit_endowment"},
  };
}

void from_json(const nlohmann::json& j, GameConfig& c) {
  try {
    auto get = [&j](const char* key, auto& field) {
      if (j.contains(key)) j.at(key).get_to(field);
    };
    get("width", c.width);
    get("height", c.height);
    get("farm_count", c.farm_count);
    get("endowment", c.endowment);
    get("invest_cost", c.invest_cost);
    get("infection_penalty", c.infection_penalty);
    get("sim_dollars_per_usd", c.sim_dollars_per_usd);
    if (j.contains("infection")) {
      const auto& inf = j.at("infection");
      if (inf.contains("rate_low")) inf.at("rate_low").get_to(c.infection.rate_low);
      if (inf.contains("rate_high")) inf.at("rate_high").get_to(c.infection.rate_high);
      if (inf.contains("distance_scale")) {
        inf.at("distance_scale").get_to(c.infection.distance_scale);
      } else if (j.contains("width") || j.contains("height")) {
        c.infection.distance_scale = 0.2 * std::hypot(c.width, c.height);
      }
      if (inf.contains("modifiers")) inf.at("modifiers").get_to(c.infection.modifiers);
    }
    get("npc_levels_low", c.npc_levels_low);
    get("npc_levels_high", c.npc_levels_high);
    get("mask_fraction_low", c.mask_fraction_low);
    get("mask_fraction_high", c.mask_fraction_high);
    get("npc_spread", c.npc_spread);
    if (j.contains("accounting")) {
      const auto s = j.at("accounting").get<std::string>();
      if (s == "deduct_penalty") {
        c.accounting = RoundAccounting::kDeductPenalty;
      } else if (s == "forfeit_endowment") {
        c.accounting = RoundAccounting::kForfeitEndowment;
      } else {
        throw ConfigError("unknown accounting mode: " + s);
      }
    }
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("game config: ") + e.what());
  }
  c.validate();
}

GameConfig load_game_config(const std::filesystem::path& path) {
  std::ifstream f(path);
  if (!f) throw ConfigError("cannot read game config " + path.string());
  nlohmann::json j;
  try {
    f >> j;
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError("game config " + path.string() + ": " + e.what());
  }
  GameConfig c;
  from_json(j.contains("game") ? j.at("game") : j, c);
  return c;
}

}  // namespace farmrisk
