#include "mtdlab/experiment.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <set>

#include "mtdlab/parallel.hpp"
#include "mtdlab/sut_io.hpp"

namespace mtdlab {

const char* model_name(Model model) {
  switch (model) {
    case Model::Rl: return "rl";
    case Model::GaRl: return "ga-rl";
    case Model::PsoRl: return "pso-rl";
  }
  return "?";
}

std::optional<Model> parse_model(const std::string& name) {
  for (Model m : kAllModels)
    if (name == model_name(m)) return m;
  return std::nullopt;
}

const std::vector<SutPreset>& sut_presets() {
  static const std::vector<SutPreset> presets = {
      {"windows10", 59, 9001},
      {"mcafee", 14, 9002},
      {"excel2016", 20, 9003},
      {"office2007", 21, 9004},
  };
  return presets;
}

SutSpec resolve_sut(const std::string& source) {
  for (const SutPreset& preset : sut_presets()) {
    if (source == preset.name) {
      SutSpec generated = generate_synthetic_sut(preset.num_params, preset.seed);
      return SutSpec(preset.name, generated.parameters());
    }
  }
  return load_sut_spec(source);
}

std::vector<int> SweepSpec::points() const {
  validate();
  std::vector<int> result;
  for (int e = start; e <= stop; e += step) result.push_back(e);
  return result;
}

void SweepSpec::validate() const {
  if (start < 1 || step < 1 || stop < start)
    throw ValidationError("sweep: requires start >= 1, step >= 1, stop >= start");
}

void ExperimentPlan::validate() const {
  if (models.empty()) throw ValidationError("plan: at least one model required");
  std::set<Model> unique_models(models.begin(), models.end());
  if (unique_models.size() != models.size())
    throw ValidationError("plan: duplicate models in plan");
  if (seeds.empty()) throw ValidationError("plan: at least one seed required");
  std::set<std::uint64_t> unique_seeds(seeds.begin(), seeds.end());
  if (unique_seeds.size() != seeds.size()) throw ValidationError("plan: duplicate seeds");
  sweep.validate();
  if (!(base_lim > 0.0)) throw ValidationError("plan: base_lim must be > 0");
  ga.validate();
  pso.validate();
}

namespace {

// Stream ids under a (seed, model) root: 0 is the optimizer's, 1+i belongs
// to sweep point i.
constexpr std::uint64_t kOptimizerStream = 0;

double optimized_lim(Model model, const ExperimentPlan& plan, const SutSpec& sut, Rng& rng) {
  switch (model) {
    case Model::Rl: return plan.base_lim;
    case Model::GaRl: return run_ga(plan.ga, sut, plan.env, rng).best.lim;
    case Model::PsoRl: return run_pso(plan.pso, sut, plan.env, rng).best_lim;
  }
  throw ValidationError("plan: unknown model");
}

}  // namespace

std::vector<RunResult> run_experiment(const ExperimentPlan& plan) {
  plan.validate();
  const SutSpec sut = resolve_sut(plan.sut);
  const std::vector<int> points = plan.sweep.points();

  std::vector<RunResult> results;
  for (Model model : plan.models) {
    for (std::uint64_t seed : plan.seeds) {
      const Rng model_rng = Rng(seed).fork(static_cast<std::uint64_t>(model));
      Rng optimizer_rng = model_rng.fork(kOptimizerStream);
      const double lim = optimized_lim(model, plan, sut, optimizer_rng);

      std::vector<RunResult> sweep_results(points.size());
      parallel_for(points.size(), [&](std::size_t i) {
        Rng run_rng = model_rng.fork(1 + static_cast<std::uint64_t>(i));
        const auto t0 = std::chrono::steady_clock::now();
        const double raw = evaluate_lim(sut, lim, points[i], plan.env, run_rng);
        const auto t1 = std::chrono::steady_clock::now();
        sweep_results[i] = RunResult{
            model,
            points[i],
            seed,
            raw,
            normalize_fitness(static_cast<std::int64_t>(raw), sut, plan.env.scoring),
            lim,
            std::chrono::duration<double, std::milli>(t1 - t0).count()};
      });
      results.insert(results.end(), sweep_results.begin(), sweep_results.end());
    }
  }
  return results;
}

namespace {

std::string fmt6(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  return buf;
}

std::string join_models(const std::vector<Model>& models, const char* sep) {
  std::string out;
  for (std::size_t i = 0; i < models.size(); ++i) {
    if (i) out += sep;
    out += model_name(models[i]);
  }
  return out;
}

}  // namespace

ComparisonReport count_wins(const std::vector<RunResult>& results) {
  // model -> episodes -> seed -> normalized
  std::map<Model, std::map<int, std::map<std::uint64_t, double>>> table;
  for (const RunResult& r : results) table[r.model][r.episodes][r.seed] = r.normalized;
  if (table.size() < 2)
    throw ValidationError("count_wins: needs results from at least two models");

  // Every model must cover the same sweep points and seeds.
  const auto& reference = table.begin()->second;
  for (const auto& [model, by_episode] : table) {
    if (by_episode.size() != reference.size())
      throw ValidationError("count_wins: models ran different sweeps");
    auto expected = reference.begin();
    for (const auto& [episodes, by_seed] : by_episode) {
      if (episodes != expected->first)
        throw ValidationError("count_wins: models ran different sweeps");
      if (by_seed.size() != expected->second.size())
        throw ValidationError("count_wins: models ran different seed sets");
      for (auto a = by_seed.begin(), b = expected->second.begin(); a != by_seed.end(); ++a, ++b)
        if (a->first != b->first)
          throw ValidationError("count_wins: models ran different seed sets");
      ++expected;
    }
  }

  ComparisonReport report;
  for (const auto& [episodes, unused] : reference) {
    (void)unused;
    SweepPointOutcome outcome;
    outcome.episodes = episodes;
    double best = 0.0;
    bool first = true;
    for (const auto& [model, by_episode] : table) {
      const auto& by_seed = by_episode.at(episodes);
      double sum = 0.0;
      for (const auto& [seed, normalized] : by_seed) sum += normalized;
      const double mean = sum / static_cast<double>(by_seed.size());
      outcome.mean_normalized[static_cast<std::size_t>(model)] = mean;
      if (first || mean > best) {
        best = mean;
        outcome.winners = {model};
        first = false;
      } else if (mean == best) {
        outcome.winners.push_back(model);
      }
    }
    if (outcome.winners.size() == 1)
      ++report.exclusive_wins[static_cast<std::size_t>(outcome.winners.front())];
    else
      ++report.ties;
    report.points.push_back(std::move(outcome));
  }

  int most = -1;
  for (const auto& [model, unused] : table) {
    (void)unused;
    const int wins = report.exclusive_wins[static_cast<std::size_t>(model)];
    if (wins > most) {
      most = wins;
      report.best = {model};
    } else if (wins == most) {
      report.best.push_back(model);
    }
  }
  return report;
}

std::string ComparisonReport::tuple_string() const {
  return "(" + std::to_string(exclusive_wins[0]) + ", " + std::to_string(exclusive_wins[1]) +
         ", " + std::to_string(exclusive_wins[2]) + ")";
}

std::string ComparisonReport::best_label() const { return join_models(best, ", "); }

namespace {

std::filesystem::path prepare_dir(const std::string& dir) {
  std::filesystem::path out(dir);
  std::error_code ec;
  std::filesystem::create_directories(out, ec);
  if (ec) throw IoError("cannot create output directory: " + dir);
  return out;
}

std::ofstream open_for_write(const std::filesystem::path& path) {
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw IoError("cannot write file: " + path.string());
  return f;
}

}  // namespace

std::string emit_results_csv(const std::vector<RunResult>& results, const std::string& dir,
                             bool include_timings) {
  const auto out = prepare_dir(dir);

  std::vector<RunResult> sorted = results;
  std::sort(sorted.begin(), sorted.end(), [](const RunResult& a, const RunResult& b) {
    if (a.model != b.model) return a.model < b.model;
    if (a.episodes != b.episodes) return a.episodes < b.episodes;
    return a.seed < b.seed;
  });

  const auto path = out / "results.csv";
  auto f = open_for_write(path);
  f << "model,episodes,seed,raw_fitness,normalized,lim,ms\n";
  for (const RunResult& r : sorted) {
    if (r.normalized < 0.0 || r.normalized > 1.0)
      throw ValidationError("emit_csv: normalized fitness outside [0, 1]");
    f << model_name(r.model) << ',' << r.episodes << ',' << r.seed << ','
      << fmt6(r.raw_fitness) << ',' << fmt6(r.normalized) << ',' << fmt6(r.lim) << ','
      << fmt6(include_timings ? r.wall_ms : 0.0) << '\n';
  }
  if (!f) throw IoError("write failed: " + path.string());
  return path.string();
}

CsvPaths emit_csv(const std::vector<RunResult>& results, const ComparisonReport& report,
                  const std::string& dir, bool include_timings) {
  const auto out = prepare_dir(dir);

  CsvPaths paths;
  paths.results = emit_results_csv(results, dir, include_timings);
  {
    const auto path = out / "report.csv";
    auto f = open_for_write(path);
    f << "episodes,winner,rl,ga_rl,pso_rl\n";
    for (const SweepPointOutcome& p : report.points) {
      f << p.episodes << ',' << join_models(p.winners, "+");
      for (const auto& mean : p.mean_normalized) {
        f << ',';
        if (mean.has_value()) f << fmt6(*mean);
      }
      f << '\n';
    }
    if (!f) throw IoError("write failed: " + path.string());
    paths.report = path.string();
  }
  return paths;
}

std::vector<std::string> emit_plot_data(const std::vector<RunResult>& results,
                                        const std::string& dir) {
  if (results.empty()) throw ValidationError("emit_plot_data: no results");
  const auto out = prepare_dir(dir);

  // model -> episodes -> normalized values across seeds
  std::map<Model, std::map<int, std::vector<double>>> series;
  for (const RunResult& r : results) series[r.model][r.episodes].push_back(r.normalized);

  std::vector<std::string> paths;
  for (const auto& [model, by_episode] : series) {
    std::string stem = model_name(model);
    std::replace(stem.begin(), stem.end(), '-', '_');
    const auto path = out / ("plot_" + stem + ".csv");
    auto f = open_for_write(path);
    f << "episodes,normalized\n";
    for (const auto& [episodes, values] : by_episode) {
      double sum = 0.0;
      for (double v : values) sum += v;
      f << episodes << ',' << fmt6(sum / static_cast<double>(values.size())) << '\n';
    }
    if (!f) throw IoError("write failed: " + path.string());
    paths.push_back(path.string());
  }
  return paths;
}

}  // namespace mtdlab
