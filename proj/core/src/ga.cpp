#include "mtdlab/ga.hpp"

#include <algorithm>
#include <numeric>

#include "mtdlab/parallel.hpp"

namespace mtdlab {

namespace {
constexpr double kMinLim = 0.05;
}

void GaConfig::validate() const {
  if (num_agents < 1) throw ValidationError("ga: num_agents must be >= 1");
  if (top_k < 1 || top_k >= num_agents)
    throw ValidationError("ga: requires 1 <= top_k < num_agents");
  if (generations < 1) throw ValidationError("ga: generations must be >= 1");
  if (genome_range < 1) throw ValidationError("ga: genome_range must be >= 1");
  if (!(noise > 0.0)) throw ValidationError("ga: noise must be > 0");
  if (episode_counts.empty()) throw ValidationError("ga: episode_counts must not be empty");
  for (int c : episode_counts)
    if (c < 1) throw ValidationError("ga: episode counts must be >= 1");
}

std::vector<AgentGenome> generate_random_agents(int num, int genome_range, Rng& rng) {
  if (num < 1 || genome_range < 1)
    throw ValidationError("generate_random_agents: num and genome_range must be >= 1");
  std::vector<AgentGenome> agents;
  agents.reserve(static_cast<std::size_t>(num));
  for (int i = 0; i < num; ++i)
    agents.push_back(AgentGenome{static_cast<double>(rng.uniform_int(1, genome_range))});
  return agents;
}

double evaluate_agent(const AgentGenome& genome, const SutSpec& sut, const EnvParams& env,
                      const std::vector<int>& episode_counts, Rng& rng) {
  double sum = 0.0;
  for (std::size_t j = 0; j < episode_counts.size(); ++j) {
    Rng run_rng = rng.fork(j);
    sum += evaluate_lim(sut, genome.lim, episode_counts[j], env, run_rng);
  }
  return sum / static_cast<double>(episode_counts.size());
}

std::vector<AgentGenome> select_top_k(const std::vector<double>& rewards,
                                      const std::vector<AgentGenome>& agents, int k) {
  if (rewards.size() != agents.size())
    throw ValidationError("select_top_k: rewards and agents sizes differ");
  if (k < 1 || static_cast<std::size_t>(k) > agents.size())
    throw ValidationError("select_top_k: k out of range");
  std::vector<std::size_t> order(agents.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return rewards[a] > rewards[b]; });
  std::vector<AgentGenome> selected;
  selected.reserve(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i) selected.push_back(agents[order[static_cast<std::size_t>(i)]]);
  return selected;
}

std::vector<AgentGenome> crossover_replicate(const std::vector<AgentGenome>& selected,
                                             int population_size, Rng& rng) {
  if (selected.empty()) throw ValidationError("crossover_replicate: no parents selected");
  std::vector<AgentGenome> children;
  children.reserve(static_cast<std::size_t>(population_size > 0 ? population_size - 1 : 0));
  for (int i = 0; i + 1 < population_size; ++i) {
    const auto pick = static_cast<std::size_t>(
        rng.uniform_int(0, static_cast<std::int64_t>(selected.size()) - 1));
    children.push_back(selected[pick]);
  }
  return children;
}

AgentGenome mutate(AgentGenome child, double noise, Rng& rng) {
  if (!(noise > 0.0)) throw ValidationError("mutate: noise must be > 0");
  const double u = rng.next_double();
  child.lim += (child.lim > u) ? -noise : noise;
  child.lim = std::max(child.lim, kMinLim);
  return child;
}

namespace {

GenerationStats make_stats(int generation, const std::vector<AgentGenome>& agents,
                           std::vector<double> rewards) {
  GenerationStats stats;
  stats.generation = generation;
  const auto best = static_cast<std::size_t>(
      std::max_element(rewards.begin(), rewards.end()) - rewards.begin());
  stats.best_reward = rewards[best];
  stats.mean_reward =
      std::accumulate(rewards.begin(), rewards.end(), 0.0) / static_cast<double>(rewards.size());
  stats.best_genome = agents[best];
  stats.rewards = std::move(rewards);
  return stats;
}

std::vector<double> evaluate_population(const std::vector<AgentGenome>& agents,
                                        const SutSpec& sut, const EnvParams& env,
                                        const GaConfig& config, const Rng& generation_rng) {
  std::vector<double> rewards(agents.size());
  parallel_for(agents.size(), [&](std::size_t i) {
    Rng agent_rng = generation_rng.fork(i);
    rewards[i] = evaluate_agent(agents[i], sut, env, config.episode_counts, agent_rng);
  });
  return rewards;
}

}  // namespace

GaRunResult run_ga(const GaConfig& config, const SutSpec& sut, const EnvParams& env, Rng& rng) {
  config.validate();
  const auto n = static_cast<std::size_t>(config.num_agents);

  std::vector<AgentGenome> agents;
  {
    Rng init_rng = rng.fork(0);
    agents = generate_random_agents(config.num_agents, config.genome_range, init_rng);
  }

  GaRunResult result;
  for (int gen = 0; gen < config.generations; ++gen) {
    const Rng generation_rng = rng.fork(1 + static_cast<std::uint64_t>(gen));
    std::vector<double> rewards = evaluate_population(agents, sut, env, config, generation_rng);
    result.history.push_back(make_stats(gen, agents, rewards));

    std::vector<AgentGenome> selected = select_top_k(rewards, agents, config.top_k);
    const AgentGenome elite = selected.front();

    Rng evolve_rng = generation_rng.fork(n);
    std::vector<AgentGenome> children = crossover_replicate(selected, config.num_agents,
                                                            evolve_rng);
    std::vector<AgentGenome> next;
    next.reserve(n);
    next.push_back(elite);  // carried over unmutated
    for (AgentGenome& child : children) next.push_back(mutate(child, config.noise, evolve_rng));
    agents = std::move(next);
  }

  // The final mutated population needs rewards of its own before a best
  // agent can be picked from it.
  const Rng final_rng = rng.fork(1 + static_cast<std::uint64_t>(config.generations));
  std::vector<double> rewards = evaluate_population(agents, sut, env, config, final_rng);
  result.history.push_back(make_stats(config.generations, agents, rewards));
  result.best = result.history.back().best_genome;
  result.best_reward = result.history.back().best_reward;
  return result;
}

}  // namespace mtdlab
