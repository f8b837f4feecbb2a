#pragma once

#include <optional>
#include <string_view>
#include <vector>

#include "mtdlab/env.hpp"
#include "mtdlab/rng.hpp"
#include "mtdlab/sut.hpp"

namespace mtdlab {

// A candidate limit. Position is the best fitness this lim has produced so
// far (not a coordinate), and velocity tracks the remaining distance to the
// ideal fitness. Velocity is telemetry: it never moves the lim.
struct Particle {
  double lim = 1.0;
  double position = 0.0;
  double velocity = 0.0;
};

struct PsoConfig {
  int swarm_size = 30;              // lims initialize to the integers 1..swarm_size
  double initial_position = 0.0;
  int generations = 100;
  double influence = 0.05;          // per-generation nudge toward the best lim
  double optimal_difference = 100.0;  // d: velocity updates must stay above this
  double initial_velocity = 1000.0;
  int num_episodes = 60;            // episodes per position evaluation

  void validate() const;
};

// Tuned (optimal_difference, initial_velocity) pairs per bundled case study.
struct PsoProfile {
  double optimal_difference = 0.0;
  double initial_velocity = 0.0;
};
std::optional<PsoProfile> pso_profile(std::string_view name);
void apply_profile(PsoConfig& config, const PsoProfile& profile);

struct SwarmState {
  std::vector<Particle> particles;
  double global_best = 0.0;
  // lim that achieved global_best; engaged after the first position update.
  std::optional<double> best_particle_lim;
};

struct PsoGenerationStats {
  int generation = 0;
  double global_best = 0.0;
  double best_lim = 0.0;
  double min_velocity = 0.0;
};

SwarmState initialize_swarm(const PsoConfig& config);

// Evaluates every particle's lim with one RL-MTD run; a particle's position
// only ever rises, and the global best tracks the maximum observed.
void update_positions(SwarmState& state, const SutSpec& sut, const PsoConfig& config,
                      const EnvParams& env, Rng& rng);

// new_pv = ideal_fitness - position; adopted only while it still exceeds the
// optimal difference and undercuts the current velocity.
void update_velocities(SwarmState& state, double ideal_fitness, const PsoConfig& config);

// Nudges every lim by influence toward the best particle's lim (lims equal
// to it move up, matching the strict > comparison). Lims stay >= 0.05.
void apply_social_influence(SwarmState& state, const PsoConfig& config);

struct PsoRunResult {
  double best_lim = 0.0;
  double global_best = 0.0;
  std::vector<PsoGenerationStats> history;
};

PsoRunResult run_pso(const PsoConfig& config, const SutSpec& sut, const EnvParams& env, Rng& rng);

}  // namespace mtdlab
