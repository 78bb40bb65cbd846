#include "farmrisk/analysis/pipeline.hpp"

#include <cmath>
#include <set>

#include "farmrisk/analysis/svg.hpp"
#include "farmrisk/common/csv.hpp"
#include "farmrisk/common/rng.hpp"
#include "farmrisk/metrics/tables.hpp"
#include "farmrisk/stats/descriptive.hpp"

namespace farmrisk {

namespace fs = std::filesystem;

namespace {

std::string group_name(const ArchetypeLabeling& lab, std::uint32_t c) {
  if (lab.labeled && lab.labels[c]) return std::string(archetype_name(*lab.labels[c]));
  return "cluster" + std::to_string(c);
}

std::string condition_name(const std::optional<SensitivityCondition>& c) {
  if (!c) return "none";
  return std::string(factor_name(c->factor)) + "=" + std::string(level_name(c->factor, c->level));
}

}  // namespace

AnalysisResult analyze(const std::vector<SessionLog>& sessions, const AnalysisOptions& options) {
  if (sessions.size() <= options.neighbors) {
    throw ParameterError("need more than k = " + std::to_string(options.neighbors) +
                         " complete sessions, got " + std::to_string(sessions.size()));
  }
  AnalysisResult res;
  res.trajectories = trajectories(sessions);
  for (const auto& s : sessions) res.summaries.push_back(summarize(s));

  std::vector<std::vector<double>> rows;
  for (const auto& t : res.trajectories) rows.push_back(t.rho);
  res.embedding = isomap(Matrix::from_rows(rows), {options.neighbors, 2});

  const std::size_t k_max = std::min(options.k_max, sessions.size());
  res.elbow = elbow_select(res.embedding.coordinates, options.k_min, k_max, options.seed,
                           options.restarts);
  KMeansOptions km;
  km.clusters = res.elbow.selected;
  km.seed = derive_seed(options.seed, static_cast<std::uint64_t>(km.clusters));
  km.restarts = options.restarts;
  // Same seed as the elbow run for K*, so the chosen clustering is the one
  // whose distortion was plotted.
  res.clustering = kmeans(res.embedding.coordinates, km);
  res.labeling = label_archetypes(res.clustering, res.trajectories, {options.slope_threshold});
  for (auto c : res.clustering.assignment) res.groups.push_back(group_name(res.labeling, c));

  res.times = time_table(sessions);
  res.group_times = group_time_stats(res.times, res.groups);

  const auto curves = round_median_curve(sessions, res.groups);
  const std::set<std::string> names(res.groups.begin(), res.groups.end());
  std::uint64_t group_index = 0;
  for (const auto& name : names) {
    std::vector<std::vector<double>> rho_by_round(kRoundsPerSession);
    std::size_t players = 0;
    for (std::size_t p = 0; p < sessions.size(); ++p) {
      if (res.groups[p] != name) continue;
      ++players;
      for (std::size_t r = 0; r < rho_by_round.size(); ++r) {
        rho_by_round[r].push_back(res.trajectories[p].rho[r]);
      }
    }
    const auto& curve = curves.at(name);
    auto& out = res.by_round[name];
    std::vector<double> ts, ys;
    for (std::size_t r = 0; r < rho_by_round.size(); ++r) {
      GroupRoundStats g;
      g.round = static_cast<int>(r + 1);
      g.median_rho = median(rho_by_round[r]);
      const std::uint64_t ci_seed =
          derive_seed(derive_seed(derive_seed(options.seed, "bootstrap"), group_index), r);
      g.rho_ci = bootstrap_median_ci(rho_by_round[r], options.ci_level, options.bootstrap_resamples,
                                     ci_seed);
      g.median_latency_ms = curve[r].median_ms;
      out.push_back(g);
      if (!curve[r].excluded && curve[r].median_ms > 0.0) {
        ts.push_back(static_cast<double>(curve[r].round));
        ys.push_back(curve[r].median_ms / 1000.0);
      }
    }
    GroupFit gf;
    gf.group = name;
    gf.players = players;
    if (ts.size() >= 3) {
      gf.fit = fit_power_law(ts, ys);
    } else {
      gf.fit = {std::nan(""), std::nan(""), std::nan("")};
    }
    res.fits.push_back(gf);
    ++group_index;
  }

  const auto means = treatment_mean_rho(sessions);
  res.sensitivity.push_back(sensitivity(means));
  res.sensitivity.push_back(sensitivity(means, SensitivityCondition{Factor::kContagionRate, 0}));
  res.sensitivity.push_back(sensitivity(means, SensitivityCondition{Factor::kContagionRate, 1}));
  return res;
}

std::vector<std::string> analysis_csv_files() {
  return {"trajectories.csv", "summaries.csv",     "time_stats.csv", "decision_time.csv",
          "embedding.csv",    "clusters.csv",      "distortion_curve.csv",
          "rho_by_round.csv", "round_medians.csv", "fits.csv",       "sensitivity.csv"};
}

void write_analysis(const AnalysisResult& res, const AnalysisOptions& options, const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw StorageError("cannot create " + dir.string() + ": " + ec.message());

  std::vector<std::string> ids;
  for (const auto& t : res.trajectories) ids.push_back(t.player_id);

  trajectories_table(res.trajectories).write(dir / "trajectories.csv");
  summaries_table(res.summaries).write(dir / "summaries.csv");
  time_stats_table(res.times, ids).write(dir / "time_stats.csv");

  {
    CsvTable t({"group", "players", "median_diff_ms", "median_z", "treatment_diff_mean_ms",
                "treatment_diff_std_ms"});
    for (const auto& g : res.group_times) {
      t.add_row({g.group, std::to_string(g.players), format_double(g.median_diff_ms),
                 g.median_z ? format_double(*g.median_z) : "NA",
                 format_double(g.treatment_diff_mean_ms), format_double(g.treatment_diff_std_ms)});
    }
    t.write(dir / "decision_time.csv");
  }
  {
    CsvTable t({"player_id", "c1", "c2"});
    const auto& c = res.embedding.coordinates;
    for (std::size_t i = 0; i < ids.size(); ++i) {
      t.add_row({ids[i], format_double(c(i, 0)), format_double(c.cols() > 1 ? c(i, 1) : 0.0)});
    }
    t.write(dir / "embedding.csv");
  }
  {
    CsvTable t({"player_id", "cluster", "label"});
    for (std::size_t i = 0; i < ids.size(); ++i) {
      const auto c = res.clustering.assignment[i];
      const auto& l = res.labeling.labels[c];
      t.add_row({ids[i], std::to_string(c), l ? std::string(archetype_name(*l)) : ""});
    }
    t.write(dir / "clusters.csv");
  }
  {
    CsvTable t({"K", "distortion", "selected"});
    for (std::size_t i = 0; i < res.elbow.ks.size(); ++i) {
      t.add_row({std::to_string(res.elbow.ks[i]), format_double(res.elbow.distortions[i]),
                 res.elbow.ks[i] == res.elbow.selected ? "1" : "0"});
    }
    t.write(dir / "distortion_curve.csv");
  }
  {
    CsvTable rho({"group", "r", "median_rho", "ci_lo", "ci_hi"});
    CsvTable lat({"group", "r", "median_latency_ms", "excluded_from_fit"});
    for (const auto& [name, rounds] : res.by_round) {
      for (const auto& g : rounds) {
        rho.add_row({name, std::to_string(g.round), format_double(g.median_rho),
                     format_double(g.rho_ci.lo), format_double(g.rho_ci.hi)});
        lat.add_row({name, std::to_string(g.round), format_double(g.median_latency_ms),
                     g.round == 1 ? "1" : "0"});
      }
    }
    rho.write(dir / "rho_by_round.csv");
    lat.write(dir / "round_medians.csv");
  }
  {
    CsvTable t({"group", "players", "a_seconds", "k", "r2"});
    for (const auto& f : res.fits) {
      t.add_row({f.group, std::to_string(f.players), format_double(f.fit.a), format_double(f.fit.k),
                 format_double(f.fit.r2)});
    }
    t.write(dir / "fits.csv");
  }
  {
    CsvTable t({"condition", "factor", "mean_level0", "mean_level1", "n_level0", "n_level1", "U",
                "p_two_sided", "method", "significant"});
    for (const auto& rep : res.sensitivity) {
      for (const auto& f : rep.factors) {
        t.add_row({condition_name(rep.condition), std::string(factor_name(f.factor)),
                   format_double(f.mean_level0), format_double(f.mean_level1),
                   std::to_string(f.n_level0), std::to_string(f.n_level1), format_double(f.test.u),
                   format_sig6(f.test.p_two_sided), std::string(rank_method_name(f.test.method)),
                   f.significant ? "1" : "0"});
      }
    }
    t.write(dir / "sensitivity.csv");
  }

  if (!options.plots) return;

  std::vector<Series> scatter;
  std::map<std::string, std::size_t> slot;
  for (std::size_t i = 0; i < ids.size(); ++i) {
    const auto [it, added] = slot.emplace(res.groups[i], scatter.size());
    if (added) scatter.push_back({res.groups[i], {}, {}, {}, {}});
    auto& s = scatter[it->second];
    s.x.push_back(res.embedding.coordinates(i, 0));
    s.y.push_back(res.embedding.coordinates.cols() > 1 ? res.embedding.coordinates(i, 1) : 0.0);
  }
  write_text_file(dir / "embedding.svg",
                  svg_scatter({"Isomap embedding of rho trajectories", "dim 1", "dim 2"}, scatter));

  std::vector<Series> rho_lines, time_lines;
  for (const auto& [name, rounds] : res.by_round) {
    Series r{name, {}, {}, {}, {}};
    Series t{name, {}, {}, {}, {}};
    for (const auto& g : rounds) {
      r.x.push_back(g.round);
      r.y.push_back(g.median_rho);
      r.lo.push_back(g.rho_ci.lo);
      r.hi.push_back(g.rho_ci.hi);
      if (g.round > 1) {
        t.x.push_back(g.round);
        t.y.push_back(g.median_latency_ms / 1000.0);
      }
    }
    rho_lines.push_back(std::move(r));
    time_lines.push_back(std::move(t));
  }
  write_text_file(dir / "rho_by_round.svg",
                  svg_lines({"Median rho by round (95% CI)", "round", "rho"}, rho_lines));
  write_text_file(dir / "time_curves.svg",
                  svg_lines({"Median round time", "round", "seconds", true, true}, time_lines));

  std::vector<Bar> bars;
  for (const auto& rep : res.sensitivity) {
    for (const auto& f : rep.factors) {
      const std::string cond = rep.condition ? "|" + condition_name(rep.condition) : "";
      bars.push_back({std::string(factor_name(f.factor)) + cond,
                      -std::log10(f.test.p_two_sided), f.significant});
    }
  }
  write_text_file(dir / "sensitivity.svg",
                  svg_bars({"Treatment factor effects", "factor", "-log10 p"}, bars));
}

}  // namespace farmrisk
