#include "mtdlab/env.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

namespace mtdlab {

PolicyConfig PolicyConfig::for_sut(const SutSpec& sut, const ScoringConfig& scoring,
                                   double p_high) {
  scoring.validate();
  if (scoring.val > max_fitness(sut, scoring))
    throw ValidationError("policy: val exceeds the sut's maximum fitness");
  PolicyConfig policy;
  policy.p_high = p_high;
  policy.p_low = 1.0 - p_high;
  policy.threshold_lo = max_fitness(sut, scoring) - scoring.val;
  policy.validate();
  return policy;
}

void PolicyConfig::validate() const {
  if (!(p_low > 0.0 && p_high < 1.0 && p_low < p_high))
    throw ValidationError("policy: requires 0 < p_low < p_high < 1");
  if (std::abs(p_high + p_low - 1.0) > 1e-12)
    throw ValidationError("policy: p_high + p_low must equal 1");
}

void ValueFunction::accumulate(const Episode& episode, double df) {
  // First-visit: each distinct state contributes exactly one (G, df) pair
  // per episode, where G sums the rewards from its first occurrence onward.
  std::unordered_map<StateKey, std::size_t, StateKeyHash> first_occurrence;
  for (std::size_t i = 0; i < episode.steps.size(); ++i)
    first_occurrence.try_emplace(episode.steps[i].state, i);

  std::vector<double> suffix_sum(episode.steps.size() + 1, 0.0);
  for (std::size_t i = episode.steps.size(); i-- > 0;)
    suffix_sum[i] = suffix_sum[i + 1] + episode.steps[i].reward;

  for (std::size_t i = 0; i < episode.steps.size(); ++i) {
    const auto& state = episode.steps[i].state;
    if (first_occurrence.at(state) != i) continue;
    Entry& entry = table_[state];
    entry.returns_sum += suffix_sum[i];
    entry.returns_count += df;
    entry.value = entry.returns_sum / entry.returns_count;
  }
}

const ValueFunction::Entry* ValueFunction::find(const StateKey& state) const {
  auto it = table_.find(state);
  return it == table_.end() ? nullptr : &it->second;
}

double ValueFunction::mean_value() const {
  if (table_.empty()) return 0.0;
  double sum = 0.0;
  for (const auto& [key, entry] : table_) sum += entry.value;
  return sum / static_cast<double>(table_.size());
}

Configuration initial_state(const SutSpec& sut, const SearchSpace& space, Rng& rng) {
  std::vector<SettingValue> values;
  values.reserve(sut.size());
  for (std::size_t i = 0; i < sut.size(); ++i) values.push_back(sample_setting(space, i, rng));
  return Configuration(std::move(values));
}

Action choose_action(std::int64_t fit, const PolicyConfig& policy, Rng& rng) {
  const bool favor_change = fit < policy.threshold_lo;
  const bool majority = rng.next_double() < policy.p_high;
  if (favor_change) return majority ? Action::Change : Action::Hold;
  return majority ? Action::Hold : Action::Change;
}

namespace {

int sign_of(std::int64_t delta) { return delta > 0 ? 1 : (delta < 0 ? -1 : 0); }

}  // namespace

StepResult step(const SutSpec& sut, const SearchSpace& space, const Configuration& state,
                Action action, const ScoringConfig& scoring, ChangeMode mode, Rng& rng) {
  if (action == Action::Hold) return StepResult{state, 0, 0};

  const std::int64_t before = fitness(sut, state, scoring);
  Configuration next = state;
  std::vector<std::size_t> low_indices;
  for (std::size_t i = 0; i < sut.size(); ++i) {
    if (score_parameter(sut.parameters()[i], state.at(i), scoring) == scoring.low)
      low_indices.push_back(i);
  }
  if (!low_indices.empty()) {
    if (mode == ChangeMode::SingleRandomLow) {
      const auto pick = static_cast<std::size_t>(
          rng.uniform_int(0, static_cast<std::int64_t>(low_indices.size()) - 1));
      const std::size_t i = low_indices[pick];
      next.set(i, sample_setting(space, i, rng));
    } else {
      for (std::size_t i : low_indices) next.set(i, sample_setting(space, i, rng));
    }
  }
  const std::int64_t delta = fitness(sut, next, scoring) - before;
  return StepResult{std::move(next), sign_of(delta), delta};
}

Episode generate_episode(const SutSpec& sut, const SearchSpace& space,
                         const PolicyConfig& policy, const ScoringConfig& scoring,
                         ChangeMode mode, Rng& rng) {
  constexpr int kMaxSteps = 100;
  const std::int64_t goal = max_fitness(sut, scoring);

  Episode episode;
  Configuration state = initial_state(sut, space, rng);
  std::int64_t fit = fitness(sut, state, scoring);
  episode.best_fitness = fit;

  for (int t = 0; t < kMaxSteps; ++t) {
    const Action action = choose_action(fit, policy, rng);
    StepResult result = step(sut, space, state, action, scoring, mode, rng);
    episode.steps.push_back(EpisodeStep{state.to_key(), action, result.reward,
                                        result.fitness_delta});
    state = std::move(result.next_state);
    fit += result.fitness_delta;
    episode.best_fitness = std::max(episode.best_fitness, fit);
    if (fit == goal) break;
  }
  episode.final_state = state.to_key();
  episode.reached_goal = (fit == goal);
  return episode;
}

ValueFunction mc_prediction(const SutSpec& sut, const SearchSpace& space,
                            const PolicyConfig& policy, const McConfig& mc,
                            const ScoringConfig& scoring, ChangeMode mode, Rng& rng) {
  mc.validate();
  ValueFunction values;
  for (int i = 0; i < mc.num_episodes; ++i) {
    Rng episode_rng = rng.fork(static_cast<std::uint64_t>(i));
    values.accumulate(generate_episode(sut, space, policy, scoring, mode, episode_rng), mc.df);
  }
  return values;
}

MtdRunResult run_rl_mtd(const SutSpec& sut, double lim, const McConfig& mc,
                        const ScoringConfig& scoring, const PolicyConfig& policy,
                        ChangeMode mode, Rng& rng) {
  mc.validate();
  const SearchSpace space = build_search_space(sut, lim);

  MtdRunResult result;
  std::int64_t best = min_fitness(sut, scoring);
  for (int i = 0; i < mc.num_episodes; ++i) {
    Rng episode_rng = rng.fork(static_cast<std::uint64_t>(i));
    Episode episode = generate_episode(sut, space, policy, scoring, mode, episode_rng);
    best = std::max(best, episode.best_fitness);
    result.reached_goal = result.reached_goal || episode.reached_goal;
    result.values.accumulate(episode, mc.df);
  }
  result.best_fitness = static_cast<double>(best);
  return result;
}

double evaluate_lim(const SutSpec& sut, double lim, int num_episodes, const EnvParams& env,
                    Rng& rng) {
  McConfig mc{num_episodes, env.df};
  return run_rl_mtd(sut, lim, mc, env.scoring, env.policy_for(sut), env.mode, rng).best_fitness;
}

void write_trace(const Episode& episode, std::ostream& out) {
  StateKeyHash hasher;
  for (const auto& s : episode.steps)
    out << std::hex << hasher(s.state) << std::dec << ' '
        << static_cast<int>(s.action) << ' ' << s.reward << '\n';
}

}  // namespace mtdlab
