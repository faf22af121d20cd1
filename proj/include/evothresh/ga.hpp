#pragma once

#include "evothresh/nsga2.hpp"
#include "evothresh/parallel.hpp"
#include "evothresh/paths.hpp"
#include "evothresh/sim.hpp"

namespace evothresh {

struct GAConfig {
  std::size_t pop_size = 100;
  std::size_t generations = 2500;
  double crossover_prob = 0.9;
  double gene_swap_prob = 0.7;
  double mutation_prob_crossed = 0.2;
  double mutation_prob_uncrossed = 1.0;
  double mutation_delta_halfwidth = 0.1;
  double expected_agent_mutations = 2.0;
  std::size_t eval_repeats_random_path = 3;
  std::size_t training_timesteps = 200;
  /// Convergence log cadence in generations; generation 0 and the last
  /// generation are always logged.
  std::size_t log_every = 10;
  std::uint64_t seed = 0;

  void validate() const;

  /// Full reproduction settings (2500 generations).
  static GAConfig full_scale();
  /// Laptop-sized runs (300 generations).
  static GAConfig desk_scale();
};

/// What an individual is scored on.
struct EvalSpec {
  PathSpec path = Circle{};
  SimConfig sim;  // sim.timesteps is the training length; sim.seed is ignored
  std::size_t random_path_repeats = 3;
};

/// `base` with the GA's training length and random-path repeat count.
EvalSpec training_spec(const GAConfig& config, PathSpec path, SimConfig base = {});

Objectives to_objectives(const SimMetrics& m);

/// Scores a genome. Deterministic paths get one simulation; random paths get
/// `random_path_repeats` simulations on independently drawn paths, averaged
/// componentwise. Per repeat, `rng` yields the path seed then the
/// task-selection seed.
Objectives evaluate(const ThresholdMatrix& genome, const EvalSpec& spec, Rng& rng);

/// Evaluates every member without objectives. Member i draws its stream from
/// (seed, generation, i), so the result is independent of worker count.
void evaluate_population(std::vector<Individual>& population, const EvalSpec& spec,
                         std::uint64_t seed, std::size_t generation, const Parallelism& par = {});
void evaluate_population_serial(std::vector<Individual>& population, const EvalSpec& spec,
                                std::uint64_t seed, std::size_t generation);

/// pop_size evaluated genomes drawn from U(0,1).
std::vector<Individual> initial_population(const GAConfig& config, const EvalSpec& spec, Rng& rng,
                                           const Parallelism& par = {});

/// One NSGA-II generation: offspring start as parent copies, are shuffled and
/// paired, crossed and mutated; changed offspring are re-evaluated and join
/// the parents; replacement keeps pop_size by rank then crowding. Offspring
/// left identical to their parent are dropped rather than duplicated.
std::vector<Individual> generation_step(const std::vector<Individual>& parents,
                                        const GAConfig& config, const EvalSpec& spec, Rng& rng,
                                        std::size_t generation, const Parallelism& par = {});

struct ConvergenceRow {
  std::size_t generation = 0;
  Objectives representative;
  ThresholdMatrix genome;
};

struct GAResult {
  std::vector<Individual> population;  // ranked, with crowding
  std::vector<ConvergenceRow> log;

  /// Indices of front 0 in `population`.
  std::vector<std::size_t> front0() const;
  std::vector<Individual> front0_members() const;
  const Individual& representative() const;
};

GAResult run_ga(const GAConfig& config, const EvalSpec& spec, std::uint64_t seed,
                const Parallelism& par = {});
/// Uses config.seed.
GAResult run_ga(const GAConfig& config, const EvalSpec& spec, const Parallelism& par = {});

}  // namespace evothresh
