#include "farmrisk/game/world.hpp"

#include <cmath>
#include <numeric>

#include "farmrisk/common/error.hpp"
#include "farmrisk/common/rng.hpp"

namespace farmrisk {

namespace {

BiosecurityLevel draw_level(Rng& rng, const std::array<double, 4>& dist) {
  const double u = uniform01(rng);
  double acc = 0.0;
  for (int b = 0; b < 3; ++b) {
    acc += dist[static_cast<std::size_t>(b)];
    if (u < acc) return level_from_beta(b);
  }
  return BiosecurityLevel::kHigh;
}

// First `count` entries of a seeded partial Fisher-Yates shuffle.
std::vector<int> draw_subset(Rng& rng, std::vector<int> pool, int count) {
  const auto n = pool.size();
  for (std::size_t i = 0; i < static_cast<std::size_t>(count) && i < n; ++i) {
    const auto j = i + uniform_below(rng, n - i);
    std::swap(pool[i], pool[j]);
  }
  pool.resize(std::min<std::size_t>(static_cast<std::size_t>(count), n));
  return pool;
}

}  // namespace

double farm_distance(const Farm& a, const Farm& b) { return std::hypot(a.x - b.x, a.y - b.y); }

double pair_transmission(double contagion, double distance_kernel, double modifier) {
  return contagion * distance_kernel * modifier;
}

double infection_probability(const Farm& susceptible, std::span<const Farm> infected,
                             const Treatment& treatment, const InfectionModelParams& params) {
  const double c = treatment.contagion_rate == FactorLevel::kHigh ? params.rate_high : params.rate_low;
  const double s = params.modifiers[static_cast<std::size_t>(beta(susceptible.biosecurity))];
  double escape = 1.0;
  for (const Farm& src : infected) {
    const double kernel = std::exp(-farm_distance(susceptible, src) / params.distance_scale);
    escape *= 1.0 - pair_transmission(c, kernel, s);
  }
  return 1.0 - escape;
}

RoundState generate_world(std::uint64_t seed, const Treatment& treatment, const GameConfig& config,
                          int round_index) {
  config.validate();
  Rng rng = make_rng(derive_seed(seed, "world"));
  RoundState state;
  state.round_index = round_index;
  state.treatment = treatment;
  state.budget = config.endowment;

  const int n = config.farm_count;
  state.farms.resize(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    Farm& f = state.farms[static_cast<std::size_t>(i)];
    f.id = i;
    f.x = uniform01(rng) * config.width;
    f.y = uniform01(rng) * config.height;
  }
  state.player_id = static_cast<int>(uniform_below(rng, static_cast<std::uint64_t>(n)));
  state.player().player_controlled = true;

  std::vector<int> npcs;
  npcs.reserve(static_cast<std::size_t>(n - 1));
  for (int i = 0; i < n; ++i) {
    if (i != state.player_id) npcs.push_back(i);
  }
  const auto& dist = treatment.avg_biosecurity == FactorLevel::kHigh ? config.npc_levels_high
                                                                     : config.npc_levels_low;
  for (int id : npcs) state.farms[static_cast<std::size_t>(id)].biosecurity = draw_level(rng, dist);

  const int seed_farm = npcs[uniform_below(rng, npcs.size())];
  state.farms[static_cast<std::size_t>(seed_farm)].infected = true;

  for (int id : draw_subset(rng, npcs, config.hidden_count(treatment.biosecurity_uncertainty))) {
    state.farms[static_cast<std::size_t>(id)].biosecurity_visible = false;
  }
  for (int id : draw_subset(rng, npcs, config.hidden_count(treatment.disease_uncertainty))) {
    state.farms[static_cast<std::size_t>(id)].infection_visible = false;
  }
  return state;
}

}  // namespace farmrisk
