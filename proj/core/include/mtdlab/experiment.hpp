#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "mtdlab/env.hpp"
#include "mtdlab/ga.hpp"
#include "mtdlab/pso.hpp"
#include "mtdlab/sut.hpp"

namespace mtdlab {

enum class Model : int { Rl = 0, GaRl = 1, PsoRl = 2 };
inline constexpr std::array<Model, 3> kAllModels = {Model::Rl, Model::GaRl, Model::PsoRl};

const char* model_name(Model model);                      // "rl", "ga-rl", "pso-rl"
std::optional<Model> parse_model(const std::string& name);

// Bundled synthetic case studies, sized like the paper's four SUTs.
struct SutPreset {
  const char* name;
  std::size_t num_params;
  std::uint64_t seed;
};
const std::vector<SutPreset>& sut_presets();

// `source` is either a preset name or a path to a SUT spec file.
SutSpec resolve_sut(const std::string& source);

struct SweepSpec {
  int start = 20;
  int stop = 500;
  int step = 20;

  std::vector<int> points() const;
  void validate() const;
};

struct ExperimentPlan {
  std::string sut;  // preset name or file path
  std::vector<Model> models = {Model::Rl, Model::GaRl, Model::PsoRl};
  SweepSpec sweep;
  std::vector<std::uint64_t> seeds = {1};
  double base_lim = 10.0;  // the un-optimized model's limit
  GaConfig ga;
  PsoConfig pso;
  EnvParams env;

  void validate() const;
};

struct RunResult {
  Model model = Model::Rl;
  int episodes = 0;
  std::uint64_t seed = 0;
  double raw_fitness = 0.0;
  double normalized = 0.0;
  double lim = 0.0;
  double wall_ms = 0.0;
};

// Runs every (model, seed) pair: the optimizers search for their lim once per
// seed, then the base model replays the whole episode sweep at that lim.
// Deterministic per seed; wall_ms is the only non-reproducible field.
std::vector<RunResult> run_experiment(const ExperimentPlan& plan);

struct SweepPointOutcome {
  int episodes = 0;
  std::array<std::optional<double>, 3> mean_normalized;  // indexed by Model
  std::vector<Model> winners;                            // argmax set at this point
};

struct ComparisonReport {
  std::vector<SweepPointOutcome> points;
  std::array<int, 3> exclusive_wins = {0, 0, 0};  // (rl, ga-rl, pso-rl)
  int ties = 0;                                   // points whose max was shared
  std::vector<Model> best;                        // most exclusive wins

  std::string tuple_string() const;  // "(0, 6, 17)"
  std::string best_label() const;    // "pso-rl" or "ga-rl, pso-rl"
};

// Per sweep point, compares the models' mean normalized fitness over seeds.
// A strictly greatest mean is an exclusive win; exact ties credit every tied
// model and count as one tie. Throws ValidationError when the models' sweeps
// or seed sets differ.
ComparisonReport count_wins(const std::vector<RunResult>& results);

struct CsvPaths {
  std::string results;
  std::string report;
};

// Writes results.csv and report.csv under `dir` with canonical row order
// (model, episodes, seed) and 6-decimal numbers. With include_timings off,
// the ms column is zeroed so reruns are byte-identical.
CsvPaths emit_csv(const std::vector<RunResult>& results, const ComparisonReport& report,
                  const std::string& dir, bool include_timings = false);

// results.csv alone, same format and ordering.
std::string emit_results_csv(const std::vector<RunResult>& results, const std::string& dir,
                             bool include_timings = false);

// Writes one episodes-vs-mean-normalized series file per model; returns the
// paths written.
std::vector<std::string> emit_plot_data(const std::vector<RunResult>& results,
                                        const std::string& dir);

}  // namespace mtdlab
