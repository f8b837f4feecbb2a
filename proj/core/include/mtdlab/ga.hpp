#pragma once

#include <vector>

#include "mtdlab/env.hpp"
#include "mtdlab/rng.hpp"
#include "mtdlab/sut.hpp"

namespace mtdlab {

// The gene: a search-space limit. Starts as an integer, drifts fractionally
// under mutation, and stays strictly positive.
struct AgentGenome {
  double lim = 1.0;
  friend bool operator==(const AgentGenome&, const AgentGenome&) = default;
};

struct GaConfig {
  int num_agents = 25;    // population size n
  int top_k = 5;          // parents kept per generation
  int generations = 100;  // X
  int genome_range = 25;  // N: initial lims are integers in [1, N]
  double noise = 0.05;
  // An agent's reward is the mean best fitness over one RL-MTD run per count.
  std::vector<int> episode_counts = {20, 60};

  void validate() const;
};

struct GenerationStats {
  int generation = 0;
  std::vector<double> rewards;  // aligned with the population
  double best_reward = 0.0;
  double mean_reward = 0.0;
  AgentGenome best_genome;
};

// `num` genomes with integer lims uniform in [1, genome_range].
std::vector<AgentGenome> generate_random_agents(int num, int genome_range, Rng& rng);

// Reward of one genome: mean of the RL-MTD scores at each episode count.
double evaluate_agent(const AgentGenome& genome, const SutSpec& sut, const EnvParams& env,
                      const std::vector<int>& episode_counts, Rng& rng);

// The k best-rewarded genomes, highest first; ties keep the lower index.
std::vector<AgentGenome> select_top_k(const std::vector<double>& rewards,
                                      const std::vector<AgentGenome>& agents, int k);

// population_size - 1 children drawn uniformly with replacement from the
// selected parents (the remaining slot is the elite's).
std::vector<AgentGenome> crossover_replicate(const std::vector<AgentGenome>& selected,
                                             int population_size, Rng& rng);

// Shifts the lim by -noise when lim > u (u uniform in [0,1)), else +noise,
// clamped to at least 0.05.
AgentGenome mutate(AgentGenome child, double noise, Rng& rng);

struct GaRunResult {
  AgentGenome best;
  double best_reward = 0.0;
  // One row per evaluation round: indices 0..generations-1 are the evolving
  // populations, index generations is the final population the best genome
  // is drawn from.
  std::vector<GenerationStats> history;
};

// Full evolution loop: evaluate, keep the top k, replicate n-1 children,
// mutate them, and carry the best genome over unmutated.
GaRunResult run_ga(const GaConfig& config, const SutSpec& sut, const EnvParams& env, Rng& rng);

}  // namespace mtdlab
