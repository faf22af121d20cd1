#pragma once

#include <utility>

#include "evothresh/core.hpp"

namespace evothresh {

/// Each position swapped independently with probability gene_swap_prob.
/// Throws DimensionError on a length mismatch.
std::pair<ThresholdMatrix, ThresholdMatrix> uniform_crossover(const ThresholdMatrix& a,
                                                              const ThresholdMatrix& b,
                                                              double gene_swap_prob, Rng& rng);

/// Record of what mutate() changed, for tests and diagnostics.
struct MutationTrace {
  std::size_t agents_mutated = 0;
  std::vector<double> deltas;
};

/// Selects each agent with probability expected_agent_mutations / agents and
/// perturbs one of its thresholds by U(-delta_halfwidth, delta_halfwidth),
/// clamping the result to [0,1].
ThresholdMatrix mutate(ThresholdMatrix genome, double delta_halfwidth,
                       double expected_agent_mutations, Rng& rng, MutationTrace* trace = nullptr);

}  // namespace evothresh
