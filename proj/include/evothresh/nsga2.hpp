#pragma once

#include <limits>

#include "evothresh/core.hpp"

namespace evothresh {

/// All three are minimized.
struct Objectives {
  double avg_pos_diff = 0.0;
  double path_len_diff = 0.0;
  double avg_switches = 0.0;

  std::array<double, 3> as_array() const { return {avg_pos_diff, path_len_diff, avg_switches}; }
  friend bool operator==(const Objectives&, const Objectives&) = default;
};

inline constexpr std::size_t kObjectiveCount = 3;
inline constexpr double kInfiniteCrowding = std::numeric_limits<double>::infinity();

struct Individual {
  ThresholdMatrix genome;
  std::optional<Objectives> objectives;
  std::optional<std::size_t> rank;
  std::optional<double> crowding;
};

using Fronts = std::vector<std::vector<std::size_t>>;

/// Pareto dominance under minimization.
bool dominates(const Objectives& a, const Objectives& b);

/// Fast non-dominated sort. Fronts hold indices into `objs`, each front in
/// ascending index order.
Fronts non_dominated_sort(std::span<const Objectives> objs);

/// Sorts the population and records each member's rank. Throws
/// std::logic_error if any member is unevaluated.
Fronts non_dominated_sort(std::vector<Individual>& population);

/// Crowding distance of each member of one front. Boundary members of every
/// objective get +infinity; objectives with zero spread are skipped.
std::vector<double> crowding_distance(std::span<const Objectives> front);

/// Picks `count` survivors: whole fronts in rank order, the last one truncated
/// by descending crowding distance (ties keep input order). Returned indices
/// are ascending. Ranks and crowding of the whole input are written back.
std::vector<std::size_t> select_survivors(std::vector<Individual>& pool, std::size_t count);

/// Lexicographic minimum by (avg_pos_diff, path_len_diff, avg_switches).
const Individual& select_representative(std::span<const Individual> front0);

}  // namespace evothresh
