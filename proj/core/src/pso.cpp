#include "mtdlab/pso.hpp"

#include <algorithm>

#include "mtdlab/parallel.hpp"

namespace mtdlab {

namespace {
constexpr double kMinLim = 0.05;
}

void PsoConfig::validate() const {
  if (swarm_size < 1) throw ValidationError("pso: swarm_size must be >= 1");
  if (generations < 1) throw ValidationError("pso: generations must be >= 1");
  if (!(influence > 0.0)) throw ValidationError("pso: influence must be > 0");
  if (optimal_difference < 0.0) throw ValidationError("pso: optimal_difference must be >= 0");
  if (num_episodes < 1) throw ValidationError("pso: num_episodes must be >= 1");
}

std::optional<PsoProfile> pso_profile(std::string_view name) {
  if (name == "windows10") return PsoProfile{20.0, 300.0};
  if (name == "mcafee") return PsoProfile{300.0, 500.0};
  if (name == "excel2016") return PsoProfile{160.0, 200.0};
  if (name == "office2007") return PsoProfile{120.0, 1000.0};
  return std::nullopt;
}

void apply_profile(PsoConfig& config, const PsoProfile& profile) {
  config.optimal_difference = profile.optimal_difference;
  config.initial_velocity = profile.initial_velocity;
}

SwarmState initialize_swarm(const PsoConfig& config) {
  config.validate();
  SwarmState state;
  state.particles.reserve(static_cast<std::size_t>(config.swarm_size));
  for (int i = 1; i <= config.swarm_size; ++i)
    state.particles.push_back(
        Particle{static_cast<double>(i), config.initial_position, config.initial_velocity});
  state.global_best = 0.0;
  return state;
}

void update_positions(SwarmState& state, const SutSpec& sut, const PsoConfig& config,
                      const EnvParams& env, Rng& rng) {
  std::vector<double> new_positions(state.particles.size());
  parallel_for(state.particles.size(), [&](std::size_t i) {
    Rng particle_rng = rng.fork(i);
    new_positions[i] =
        evaluate_lim(sut, state.particles[i].lim, config.num_episodes, env, particle_rng);
  });
  for (std::size_t i = 0; i < state.particles.size(); ++i) {
    Particle& particle = state.particles[i];
    const double new_pp = new_positions[i];
    if (new_pp > particle.position) particle.position = new_pp;
    if (new_pp > state.global_best) {
      state.global_best = new_pp;
      state.best_particle_lim = particle.lim;
    }
  }
}

void update_velocities(SwarmState& state, double ideal_fitness, const PsoConfig& config) {
  for (Particle& particle : state.particles) {
    const double new_pv = ideal_fitness - particle.position;
    if (new_pv > config.optimal_difference && new_pv < particle.velocity)
      particle.velocity = new_pv;
  }
}

void apply_social_influence(SwarmState& state, const PsoConfig& config) {
  if (!state.best_particle_lim.has_value())
    throw ValidationError("pso: social influence needs a position update first");
  const double best = *state.best_particle_lim;
  for (Particle& particle : state.particles) {
    particle.lim += (particle.lim > best) ? -config.influence : config.influence;
    particle.lim = std::max(particle.lim, kMinLim);
  }
}

PsoRunResult run_pso(const PsoConfig& config, const SutSpec& sut, const EnvParams& env,
                     Rng& rng) {
  config.validate();
  const double ideal_fitness = static_cast<double>(max_fitness(sut, env.scoring));

  SwarmState state = initialize_swarm(config);
  PsoRunResult result;
  for (int gen = 0; gen < config.generations; ++gen) {
    Rng generation_rng = rng.fork(static_cast<std::uint64_t>(gen));
    update_positions(state, sut, config, env, generation_rng);
    update_velocities(state, ideal_fitness, config);
    apply_social_influence(state, config);

    double min_velocity = state.particles.front().velocity;
    for (const Particle& p : state.particles) min_velocity = std::min(min_velocity, p.velocity);
    result.history.push_back(PsoGenerationStats{gen, state.global_best,
                                                state.best_particle_lim.value_or(0.0),
                                                min_velocity});
  }
  result.best_lim = state.best_particle_lim.value_or(state.particles.front().lim);
  result.global_best = state.global_best;
  return result;
}

}  // namespace mtdlab
