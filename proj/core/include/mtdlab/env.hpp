#pragma once

#include <cstdint>
#include <iosfwd>
#include <unordered_map>
#include <vector>

#include "mtdlab/rng.hpp"
#include "mtdlab/search_space.hpp"
#include "mtdlab/sut.hpp"

namespace mtdlab {

enum class Action : int { Hold = 0, Change = 1 };

// Threshold policy: below threshold_lo the agent leans toward changing the
// configuration, at or above it toward holding.
struct PolicyConfig {
  double p_high = 0.8;
  double p_low = 0.2;
  std::int64_t threshold_lo = 0;  // max_fitness - val

  // Builds the policy for a SUT, with threshold_lo = max_fitness - val.
  static PolicyConfig for_sut(const SutSpec& sut, const ScoringConfig& scoring,
                              double p_high = 0.8);

  void validate() const;
};

// Which parameters a Change action re-samples.
enum class ChangeMode {
  AllLow,           // every low-scored parameter (default)
  SingleRandomLow,  // one low-scored parameter picked uniformly
};

struct EpisodeStep {
  StateKey state;             // configuration before the action, canonical form
  Action action = Action::Hold;
  int reward = 0;             // sign of the fitness delta, in {-1, 0, +1}
  std::int64_t fitness_delta = 0;  // raw Fit(next) - Fit(state), for diagnostics
};

struct Episode {
  std::vector<EpisodeStep> steps;
  StateKey final_state;            // configuration after the last step
  std::int64_t best_fitness = 0;   // highest fitness among states the agent occupied
  bool reached_goal = false;
};

struct McConfig {
  int num_episodes = 1;
  double df = 1.0;  // per-visit increment applied to the returns counter

  void validate() const {
    if (num_episodes < 1) throw ValidationError("mc: num_episodes must be >= 1");
    if (!(df > 0.0)) throw ValidationError("mc: df must be > 0");
  }
};

// First-visit state-value table. For every visited state it keeps the sum of
// downstream returns, the visit counter (incremented by df), and their ratio.
class ValueFunction {
 public:
  struct Entry {
    double value = 0.0;
    double returns_sum = 0.0;
    double returns_count = 0.0;
  };

  // Folds one episode in: for each state's first occurrence, adds the sum of
  // rewards from there to the episode end, bumps the counter by df, and
  // refreshes value = returns_sum / returns_count.
  void accumulate(const Episode& episode, double df);

  const Entry* find(const StateKey& state) const;
  std::size_t size() const { return table_.size(); }
  const std::unordered_map<StateKey, Entry, StateKeyHash>& entries() const { return table_; }

  double mean_value() const;

 private:
  std::unordered_map<StateKey, Entry, StateKeyHash> table_;
};

// Draws an initial configuration by sampling every parameter from the space.
Configuration initial_state(const SutSpec& sut, const SearchSpace& space, Rng& rng);

// Hold/Change decision for the current fitness under the threshold policy.
Action choose_action(std::int64_t fit, const PolicyConfig& policy, Rng& rng);

struct StepResult {
  Configuration next_state;
  int reward = 0;
  std::int64_t fitness_delta = 0;
};

// One transition. Hold keeps the state (reward 0). Change re-samples the
// low-scored parameters per `mode` — high-scored parameters are never
// touched — and rewards the sign of the fitness change.
StepResult step(const SutSpec& sut, const SearchSpace& space, const Configuration& state,
                Action action, const ScoringConfig& scoring, ChangeMode mode, Rng& rng);

// Rolls out one episode from a fresh initial state: at most 100 steps,
// stopping early once the goal state (fitness == max_fitness) is reached.
Episode generate_episode(const SutSpec& sut, const SearchSpace& space,
                         const PolicyConfig& policy, const ScoringConfig& scoring,
                         ChangeMode mode, Rng& rng);

// Runs num_episodes rollouts and accumulates them into a value function.
// Episode i uses the stream rng.fork(i), so a longer run replays a shorter
// run's episodes before adding new ones.
ValueFunction mc_prediction(const SutSpec& sut, const SearchSpace& space,
                            const PolicyConfig& policy, const McConfig& mc,
                            const ScoringConfig& scoring, ChangeMode mode, Rng& rng);

struct MtdRunResult {
  double best_fitness = 0.0;  // highest raw fitness over all occupied states
  bool reached_goal = false;
  ValueFunction values;
};

// The base RL-MTD model: builds the lim search space, runs Monte Carlo
// prediction, and reports the best raw fitness encountered (the scalar the
// optimizers consume) together with the full value function.
MtdRunResult run_rl_mtd(const SutSpec& sut, double lim, const McConfig& mc,
                        const ScoringConfig& scoring, const PolicyConfig& policy,
                        ChangeMode mode, Rng& rng);

// Debug trace: one "state-hash action reward" line per step.
void write_trace(const Episode& episode, std::ostream& out);

// Environment knobs shared by the optimizers and the experiment harness.
// The policy itself depends on the SUT (its threshold does), so it is derived
// per SUT rather than stored.
struct EnvParams {
  ScoringConfig scoring{};
  double p_high = 0.8;
  ChangeMode mode = ChangeMode::AllLow;
  double df = 1.0;

  PolicyConfig policy_for(const SutSpec& sut) const {
    return PolicyConfig::for_sut(sut, scoring, p_high);
  }
};

// Convenience wrapper: best raw fitness of one RL-MTD run at this lim.
double evaluate_lim(const SutSpec& sut, double lim, int num_episodes, const EnvParams& env,
                    Rng& rng);

}  // namespace mtdlab
