#include "evothresh/ga.hpp"

#include <algorithm>
#include <numeric>

#include "evothresh/operators.hpp"

namespace evothresh {

namespace {

void require_probability(double p, const char* what) {
  if (!(p >= 0.0 && p <= 1.0)) throw ConfigError(std::string(what) + " must lie in [0,1]");
}

Rng evaluation_rng(std::uint64_t seed, std::size_t generation, std::size_t index) {
  return Rng(derive_seed(seed, {stream::kEvaluation, generation, index}));
}

}  // namespace

void GAConfig::validate() const {
  if (pop_size == 0) throw ConfigError("pop_size must be positive");
  if (training_timesteps == 0) throw ConfigError("training timesteps must be positive");
  if (eval_repeats_random_path == 0) throw ConfigError("random-path repeats must be positive");
  if (log_every == 0) throw ConfigError("log cadence must be positive");
  require_probability(crossover_prob, "crossover probability");
  require_probability(gene_swap_prob, "gene swap probability");
  require_probability(mutation_prob_crossed, "mutation probability (crossed)");
  require_probability(mutation_prob_uncrossed, "mutation probability (uncrossed)");
  if (!(mutation_delta_halfwidth >= 0.0)) throw ConfigError("mutation delta must be non-negative");
  if (!(expected_agent_mutations >= 0.0)) throw ConfigError("expected agent mutations must be non-negative");
}

GAConfig GAConfig::full_scale() { return GAConfig{}; }

GAConfig GAConfig::desk_scale() {
  GAConfig c;
  c.generations = 300;
  return c;
}

EvalSpec training_spec(const GAConfig& config, PathSpec path, SimConfig base) {
  EvalSpec spec;
  spec.path = std::move(path);
  spec.sim = base;
  spec.sim.timesteps = config.training_timesteps;
  spec.random_path_repeats = config.eval_repeats_random_path;
  return spec;
}

Objectives to_objectives(const SimMetrics& m) {
  return {m.avg_pos_diff, m.path_len_diff, m.avg_switches};
}

Objectives evaluate(const ThresholdMatrix& genome, const EvalSpec& spec, Rng& rng) {
  const std::size_t repeats = is_stochastic(spec.path) ? std::max<std::size_t>(spec.random_path_repeats, 1) : 1;
  Objectives sum{};
  for (std::size_t r = 0; r < repeats; ++r) {
    Rng path_rng(rng());
    const Path path = generate_path(spec.path, spec.sim.timesteps, spec.sim.target_step_len, path_rng);
    SimConfig cfg = spec.sim;
    cfg.timesteps = path.steps();  // a revolutions cap can shorten the path
    cfg.seed = rng();
    const Objectives o = to_objectives(run_simulation(cfg, genome, path));
    sum.avg_pos_diff += o.avg_pos_diff;
    sum.path_len_diff += o.path_len_diff;
    sum.avg_switches += o.avg_switches;
  }
  const auto n = static_cast<double>(repeats);
  return {sum.avg_pos_diff / n, sum.path_len_diff / n, sum.avg_switches / n};
}

void evaluate_population(std::vector<Individual>& population, const EvalSpec& spec,
                         std::uint64_t seed, std::size_t generation, const Parallelism& par) {
  parallel_for(population.size(), par, [&](std::size_t i) {
    Individual& ind = population[i];
    if (ind.objectives) return;
    Rng rng = evaluation_rng(seed, generation, i);
    ind.objectives = evaluate(ind.genome, spec, rng);
  });
}

void evaluate_population_serial(std::vector<Individual>& population, const EvalSpec& spec,
                                std::uint64_t seed, std::size_t generation) {
  serial_for(population.size(), [&](std::size_t i) {
    Individual& ind = population[i];
    if (ind.objectives) return;
    Rng rng = evaluation_rng(seed, generation, i);
    ind.objectives = evaluate(ind.genome, spec, rng);
  });
}

std::vector<Individual> initial_population(const GAConfig& config, const EvalSpec& spec, Rng& rng,
                                           const Parallelism& par) {
  std::vector<Individual> pop(config.pop_size);
  for (Individual& ind : pop) ind.genome = random_thresholds(spec.sim.swarm_size, rng);
  evaluate_population(pop, spec, rng(), 0, par);
  return pop;
}

std::vector<Individual> generation_step(const std::vector<Individual>& parents,
                                        const GAConfig& config, const EvalSpec& spec, Rng& rng,
                                        std::size_t generation, const Parallelism& par) {
  const std::size_t n = parents.size();
  for (const Individual& p : parents)
    if (!p.objectives) throw std::logic_error("generation_step requires evaluated parents");

  std::vector<Individual> offspring = parents;
  std::vector<bool> crossed(n, false);

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::shuffle(order.begin(), order.end(), rng);

  std::bernoulli_distribution do_cross(config.crossover_prob);
  for (std::size_t k = 0; k + 1 < n; k += 2) {
    const std::size_t a = order[k];
    const std::size_t b = order[k + 1];
    if (!do_cross(rng)) continue;
    auto [x, y] = uniform_crossover(offspring[a].genome, offspring[b].genome, config.gene_swap_prob, rng);
    offspring[a].genome = std::move(x);
    offspring[b].genome = std::move(y);
    crossed[a] = crossed[b] = true;
  }

  std::bernoulli_distribution mutate_crossed(config.mutation_prob_crossed);
  std::bernoulli_distribution mutate_uncrossed(config.mutation_prob_uncrossed);
  for (std::size_t i = 0; i < n; ++i) {
    const bool hit = crossed[i] ? mutate_crossed(rng) : mutate_uncrossed(rng);
    if (hit)
      offspring[i].genome = mutate(std::move(offspring[i].genome), config.mutation_delta_halfwidth,
                                   config.expected_agent_mutations, rng);
  }

  std::vector<Individual> changed;
  for (std::size_t i = 0; i < n; ++i) {
    if (offspring[i].genome == parents[i].genome) continue;
    offspring[i].objectives.reset();
    offspring[i].rank.reset();
    offspring[i].crowding.reset();
    changed.push_back(std::move(offspring[i]));
  }
  const std::uint64_t eval_seed = rng();
  evaluate_population(changed, spec, eval_seed, generation, par);

  std::vector<Individual> pool = parents;
  pool.insert(pool.end(), std::make_move_iterator(changed.begin()), std::make_move_iterator(changed.end()));
  const auto keep = select_survivors(pool, std::min(config.pop_size, pool.size()));

  std::vector<Individual> next;
  next.reserve(keep.size());
  for (std::size_t i : keep) next.push_back(std::move(pool[i]));
  return next;
}

std::vector<std::size_t> GAResult::front0() const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < population.size(); ++i)
    if (population[i].rank == std::size_t{0}) out.push_back(i);
  return out;
}

std::vector<Individual> GAResult::front0_members() const {
  std::vector<Individual> out;
  for (std::size_t i : front0()) out.push_back(population[i]);
  return out;
}

const Individual& GAResult::representative() const {
  const auto members = front0();
  const Individual* best = nullptr;
  for (std::size_t i : members) {
    const Individual& ind = population[i];
    if (!best || ind.objectives->as_array() < best->objectives->as_array()) best = &ind;
  }
  if (!best) throw std::logic_error("population has no front 0");
  return *best;
}

namespace {

/// Ranks and crowds the population in place so front 0 is known.
void refresh_ranking(std::vector<Individual>& pop) { select_survivors(pop, pop.size()); }

ConvergenceRow log_row(std::size_t generation, std::vector<Individual>& pop) {
  std::vector<Individual> front;
  for (const Individual& ind : pop)
    if (ind.rank == std::size_t{0}) front.push_back(ind);
  const Individual& rep = select_representative(front);
  return {generation, *rep.objectives, rep.genome};
}

}  // namespace

GAResult run_ga(const GAConfig& config, const EvalSpec& spec, std::uint64_t seed, const Parallelism& par) {
  config.validate();
  spec.sim.validate();
  validate_path(spec.path, spec.sim.target_step_len);

  Rng rng(derive_seed(seed, {stream::kGa}));
  GAResult result;
  result.population = initial_population(config, spec, rng, par);
  refresh_ranking(result.population);
  result.log.push_back(log_row(0, result.population));

  for (std::size_t g = 1; g <= config.generations; ++g) {
    result.population = generation_step(result.population, config, spec, rng, g, par);
    if (g % config.log_every == 0 || g == config.generations) {
      refresh_ranking(result.population);
      result.log.push_back(log_row(g, result.population));
    }
  }
  refresh_ranking(result.population);
  return result;
}

GAResult run_ga(const GAConfig& config, const EvalSpec& spec, const Parallelism& par) {
  return run_ga(config, spec, config.seed, par);
}

}  // namespace evothresh
