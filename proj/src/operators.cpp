#include "evothresh/operators.hpp"

#include <algorithm>

namespace evothresh {

std::pair<ThresholdMatrix, ThresholdMatrix> uniform_crossover(const ThresholdMatrix& a,
                                                              const ThresholdMatrix& b,
                                                              double gene_swap_prob, Rng& rng) {
  if (a.size() != b.size())
    throw DimensionError("crossover parents differ in length (" + std::to_string(a.size()) + " vs " +
                         std::to_string(b.size()) + ")");
  ThresholdMatrix x = a;
  ThresholdMatrix y = b;
  std::bernoulli_distribution swap(gene_swap_prob);
  auto xv = x.values();
  auto yv = y.values();
  for (std::size_t i = 0; i < xv.size(); ++i)
    if (swap(rng)) std::swap(xv[i], yv[i]);
  return {std::move(x), std::move(y)};
}

ThresholdMatrix mutate(ThresholdMatrix genome, double delta_halfwidth,
                       double expected_agent_mutations, Rng& rng, MutationTrace* trace) {
  const std::size_t m = genome.agents();
  if (m == 0) return genome;
  std::bernoulli_distribution pick_agent(std::clamp(expected_agent_mutations / static_cast<double>(m), 0.0, 1.0));
  std::uniform_int_distribution<std::size_t> pick_task(0, kTaskCount - 1);
  std::uniform_real_distribution<double> delta(-delta_halfwidth, delta_halfwidth);
  for (std::size_t i = 0; i < m; ++i) {
    if (!pick_agent(rng)) continue;
    const Task t = kTasks[pick_task(rng)];
    const double d = delta(rng);
    genome(i, t) = std::clamp(genome(i, t) + d, 0.0, 1.0);
    if (trace) {
      ++trace->agents_mutated;
      trace->deltas.push_back(d);
    }
  }
  return genome;
}

}  // namespace evothresh
