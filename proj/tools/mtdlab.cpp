// mtdlab: command-line front end for the MTD configuration-hardening
// simulator. Subcommands: gen-sut, run, optimize, compare.

#include <chrono>
#include <cstdint>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "mtdlab/experiment.hpp"
#include "mtdlab/sut_io.hpp"

namespace {

using namespace mtdlab;

SweepSpec parse_sweep(const std::string& text) {
  SweepSpec sweep;
  const auto first = text.find(':');
  const auto second = text.find(':', first + 1);
  if (first == std::string::npos || second == std::string::npos)
    throw ValidationError("sweep must look like start:stop:step, e.g. 20:500:20");
  try {
    sweep.start = std::stoi(text.substr(0, first));
    sweep.stop = std::stoi(text.substr(first + 1, second - first - 1));
    sweep.step = std::stoi(text.substr(second + 1));
  } catch (const std::exception&) {
    throw ValidationError("sweep must contain three integers: start:stop:step");
  }
  sweep.validate();
  return sweep;
}

std::vector<std::uint64_t> parse_seeds(const std::string& text) {
  std::vector<std::uint64_t> seeds;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto comma = text.find(',', pos);
    const std::string item = text.substr(pos, comma == std::string::npos ? comma : comma - pos);
    if (item.empty()) throw ValidationError("seeds: empty entry in list");
    try {
      seeds.push_back(std::stoull(item));
    } catch (const std::exception&) {
      throw ValidationError("seeds: '" + item + "' is not an integer");
    }
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  if (seeds.empty()) throw ValidationError("seeds: list is empty");
  return seeds;
}

// Profile resolution order: explicit flags > --profile > the SUT preset's
// own profile > PsoConfig defaults.
void resolve_pso_profile(PsoConfig& pso, const std::string& profile, const std::string& sut,
                         bool have_custom) {
  if (have_custom) return;
  if (!profile.empty()) {
    const auto p = pso_profile(profile);
    if (!p) throw ValidationError("unknown pso profile: " + profile);
    apply_profile(pso, *p);
    return;
  }
  if (const auto p = pso_profile(sut)) apply_profile(pso, *p);
}

int cmd_gen_sut(std::size_t params, std::uint64_t seed, const std::string& out) {
  const SutSpec sut = generate_synthetic_sut(params, seed);
  save_sut_spec(sut, out);
  std::cout << "wrote " << out << " (" << sut.size() << " parameters)\n";
  return 0;
}

int cmd_run(const std::string& sut_source, const std::string& model_name_arg, int episodes,
            std::uint64_t seed, double lim_override, int generations, const std::string& out) {
  const auto model = parse_model(model_name_arg);
  if (!model) throw ValidationError("unknown model: " + model_name_arg);
  if (episodes < 1) throw ValidationError("episodes must be >= 1");

  const SutSpec sut = resolve_sut(sut_source);
  EnvParams env;
  const Rng model_rng = Rng(seed).fork(static_cast<std::uint64_t>(*model));

  double lim = lim_override;
  if (lim <= 0.0) {
    Rng optimizer_rng = model_rng.fork(0);
    switch (*model) {
      case Model::Rl:
        lim = 10.0;
        break;
      case Model::GaRl: {
        GaConfig ga;
        if (generations > 0) ga.generations = generations;
        lim = run_ga(ga, sut, env, optimizer_rng).best.lim;
        break;
      }
      case Model::PsoRl: {
        PsoConfig pso;
        if (generations > 0) pso.generations = generations;
        resolve_pso_profile(pso, "", sut_source, false);
        lim = run_pso(pso, sut, env, optimizer_rng).best_lim;
        break;
      }
    }
  }

  Rng run_rng = model_rng.fork(1);
  const auto t0 = std::chrono::steady_clock::now();
  const double raw = evaluate_lim(sut, lim, episodes, env, run_rng);
  const auto t1 = std::chrono::steady_clock::now();

  RunResult result{*model, episodes, seed, raw,
                   normalize_fitness(static_cast<std::int64_t>(raw), sut, env.scoring), lim,
                   std::chrono::duration<double, std::milli>(t1 - t0).count()};
  const std::string path = emit_results_csv({result}, out, /*include_timings=*/true);
  std::cout << "model=" << model_name(*model) << " episodes=" << episodes << " lim=" << lim
            << " raw=" << raw << " normalized=" << result.normalized << '\n'
            << "wrote " << path << '\n';
  return 0;
}

int cmd_optimize(const std::string& sut_source, const std::string& algo, std::uint64_t seed,
                 const std::string& profile, int generations, int agents, int top_k, int swarm,
                 double opt_diff, double velocity) {
  const SutSpec sut = resolve_sut(sut_source);
  EnvParams env;
  Rng rng = Rng(seed).fork(algo == "ga" ? static_cast<std::uint64_t>(Model::GaRl)
                                        : static_cast<std::uint64_t>(Model::PsoRl))
                .fork(0);

  if (algo == "ga") {
    GaConfig ga;
    if (generations > 0) ga.generations = generations;
    if (agents > 0) ga.num_agents = agents;
    if (top_k > 0) ga.top_k = top_k;
    const GaRunResult result = run_ga(ga, sut, env, rng);
    std::cout << "generation,best_reward,mean_reward,best_lim\n";
    for (const GenerationStats& s : result.history)
      std::cout << s.generation << ',' << s.best_reward << ',' << s.mean_reward << ','
                << s.best_genome.lim << '\n';
    std::cout << "best_lim=" << result.best.lim << " best_reward=" << result.best_reward << '\n';
    return 0;
  }
  if (algo == "pso") {
    PsoConfig pso;
    if (generations > 0) pso.generations = generations;
    if (swarm > 0) pso.swarm_size = swarm;
    const bool have_custom = opt_diff >= 0.0 || velocity > 0.0;
    if (opt_diff >= 0.0) pso.optimal_difference = opt_diff;
    if (velocity > 0.0) pso.initial_velocity = velocity;
    resolve_pso_profile(pso, profile, sut_source, have_custom);
    const PsoRunResult result = run_pso(pso, sut, env, rng);
    std::cout << "generation,global_best,best_lim,min_velocity\n";
    for (const PsoGenerationStats& s : result.history)
      std::cout << s.generation << ',' << s.global_best << ',' << s.best_lim << ','
                << s.min_velocity << '\n';
    std::cout << "best_lim=" << result.best_lim << " global_best=" << result.global_best << '\n';
    return 0;
  }
  throw ValidationError("unknown algorithm: " + algo + " (expected ga or pso)");
}

int cmd_compare(const std::string& sut_source, const std::string& sweep_text,
                const std::string& seeds_text, int generations, int agents, int top_k, int swarm,
                const std::string& profile, double base_lim, const std::string& out) {
  ExperimentPlan plan;
  plan.sut = sut_source;
  plan.sweep = parse_sweep(sweep_text);
  plan.seeds = parse_seeds(seeds_text);
  plan.base_lim = base_lim;
  if (generations > 0) {
    plan.ga.generations = generations;
    plan.pso.generations = generations;
  }
  if (agents > 0) plan.ga.num_agents = agents;
  if (top_k > 0) plan.ga.top_k = top_k;
  if (swarm > 0) plan.pso.swarm_size = swarm;
  resolve_pso_profile(plan.pso, profile, sut_source, false);

  const std::vector<RunResult> results = run_experiment(plan);
  const ComparisonReport report = count_wins(results);
  const CsvPaths paths = emit_csv(results, report, out, /*include_timings=*/false);
  const std::vector<std::string> plots = emit_plot_data(results, out);

  std::cout << "wins (rl, ga-rl, pso-rl): " << report.tuple_string() << '\n'
            << "ties: " << report.ties << " of " << report.points.size() << " sweep points\n"
            << "best: " << report.best_label() << '\n'
            << "wrote " << paths.results << '\n'
            << "wrote " << paths.report << '\n';
  for (const std::string& p : plots) std::cout << "wrote " << p << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"MTD secure-configuration game: base RL model plus GA/PSO search-space tuning"};
  app.require_subcommand(1);

  // gen-sut
  auto* gen = app.add_subcommand("gen-sut", "Generate a synthetic SUT spec file");
  std::size_t gen_params = 0;
  std::uint64_t gen_seed = 0;
  std::string gen_out;
  gen->add_option("--params", gen_params, "Number of parameters")->required();
  gen->add_option("--seed", gen_seed, "Generator seed")->required();
  gen->add_option("--out", gen_out, "Output file path")->required();

  // run
  auto* run = app.add_subcommand("run", "Run one model at one episode count");
  std::string run_sut, run_model, run_out = ".";
  int run_episodes = 0, run_generations = 0;
  std::uint64_t run_seed = 0;
  double run_lim = 0.0;
  run->add_option("--sut", run_sut, "SUT spec file or preset name")->required();
  run->add_option("--model", run_model, "rl, ga-rl, or pso-rl")->required();
  run->add_option("--episodes", run_episodes, "Episode count")->required();
  run->add_option("--seed", run_seed, "Run seed")->required();
  run->add_option("--lim", run_lim, "Use this lim instead of optimizing");
  run->add_option("--generations", run_generations, "Optimizer generations (ga-rl/pso-rl)");
  run->add_option("--out", run_out, "Output directory");

  // optimize
  auto* opt = app.add_subcommand("optimize", "Search for the best lim with ga or pso");
  std::string opt_sut, opt_algo, opt_profile;
  std::uint64_t opt_seed = 0;
  int opt_generations = 0, opt_agents = 0, opt_top_k = 0, opt_swarm = 0;
  double opt_diff = -1.0, opt_velocity = 0.0;
  opt->add_option("--sut", opt_sut, "SUT spec file or preset name")->required();
  opt->add_option("--algo", opt_algo, "ga or pso")->required();
  opt->add_option("--seed", opt_seed, "Optimizer seed")->required();
  opt->add_option("--profile", opt_profile,
                  "PSO tuning profile: windows10, mcafee, excel2016, office2007");
  opt->add_option("--generations", opt_generations, "Generations to run");
  opt->add_option("--agents", opt_agents, "GA population size");
  opt->add_option("--top-k", opt_top_k, "GA parents per generation");
  opt->add_option("--swarm", opt_swarm, "PSO swarm size");
  opt->add_option("--opt-diff", opt_diff, "PSO optimal difference");
  opt->add_option("--velocity", opt_velocity, "PSO initial velocity");

  // compare
  auto* cmp = app.add_subcommand("compare", "Sweep episode counts across all three models");
  std::string cmp_sut, cmp_sweep = "20:500:20", cmp_seeds = "1", cmp_profile, cmp_out = ".";
  int cmp_generations = 0, cmp_agents = 0, cmp_top_k = 0, cmp_swarm = 0;
  double cmp_lim = 10.0;
  cmp->add_option("--sut", cmp_sut, "SUT spec file or preset name")->required();
  cmp->add_option("--sweep", cmp_sweep, "Episode sweep start:stop:step");
  cmp->add_option("--seeds", cmp_seeds, "Comma-separated seed list");
  cmp->add_option("--generations", cmp_generations, "Optimizer generations (ga and pso)");
  cmp->add_option("--agents", cmp_agents, "GA population size");
  cmp->add_option("--top-k", cmp_top_k, "GA parents per generation");
  cmp->add_option("--swarm", cmp_swarm, "PSO swarm size");
  cmp->add_option("--profile", cmp_profile, "PSO tuning profile");
  cmp->add_option("--lim", cmp_lim, "Base model lim");
  cmp->add_option("--out", cmp_out, "Output directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 1;
  }

  try {
    if (gen->parsed()) return cmd_gen_sut(gen_params, gen_seed, gen_out);
    if (run->parsed())
      return cmd_run(run_sut, run_model, run_episodes, run_seed, run_lim, run_generations,
                     run_out);
    if (opt->parsed())
      return cmd_optimize(opt_sut, opt_algo, opt_seed, opt_profile, opt_generations, opt_agents,
                          opt_top_k, opt_swarm, opt_diff, opt_velocity);
    if (cmp->parsed())
      return cmd_compare(cmp_sut, cmp_sweep, cmp_seeds, cmp_generations, cmp_agents, cmp_top_k,
                         cmp_swarm, cmp_profile, cmp_lim, cmp_out);
  } catch (const IoError& e) {
    std::cerr << "io error: " << e.what() << '\n';
    return 2;
  } catch (const ValidationError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 1;
}
