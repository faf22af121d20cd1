#include "evothresh/nsga2.hpp"

#include <algorithm>
#include <numeric>

namespace evothresh {

bool dominates(const Objectives& a, const Objectives& b) {
  const auto x = a.as_array();
  const auto y = b.as_array();
  bool strictly = false;
  for (std::size_t k = 0; k < kObjectiveCount; ++k) {
    if (x[k] > y[k]) return false;
    if (x[k] < y[k]) strictly = true;
  }
  return strictly;
}

Fronts non_dominated_sort(std::span<const Objectives> objs) {
  const std::size_t n = objs.size();
  std::vector<std::vector<std::size_t>> dominated(n);
  std::vector<std::size_t> dominator_count(n, 0);
  Fronts fronts;
  if (n == 0) return fronts;

  std::vector<std::size_t> current;
  for (std::size_t p = 0; p < n; ++p) {
    for (std::size_t q = p + 1; q < n; ++q) {
      if (dominates(objs[p], objs[q])) {
        dominated[p].push_back(q);
        ++dominator_count[q];
      } else if (dominates(objs[q], objs[p])) {
        dominated[q].push_back(p);
        ++dominator_count[p];
      }
    }
  }
  for (std::size_t p = 0; p < n; ++p)
    if (dominator_count[p] == 0) current.push_back(p);

  while (!current.empty()) {
    std::vector<std::size_t> next;
    for (std::size_t p : current)
      for (std::size_t q : dominated[p])
        if (--dominator_count[q] == 0) next.push_back(q);
    std::sort(next.begin(), next.end());
    fronts.push_back(std::move(current));
    current = std::move(next);
  }
  return fronts;
}

namespace {

std::vector<Objectives> objectives_of(const std::vector<Individual>& population) {
  std::vector<Objectives> objs;
  objs.reserve(population.size());
  for (const Individual& ind : population) {
    if (!ind.objectives) throw std::logic_error("cannot sort an unevaluated individual");
    objs.push_back(*ind.objectives);
  }
  return objs;
}

}  // namespace

Fronts non_dominated_sort(std::vector<Individual>& population) {
  const auto objs = objectives_of(population);
  Fronts fronts = non_dominated_sort(std::span<const Objectives>(objs));
  for (std::size_t r = 0; r < fronts.size(); ++r)
    for (std::size_t i : fronts[r]) population[i].rank = r;
  return fronts;
}

std::vector<double> crowding_distance(std::span<const Objectives> front) {
  const std::size_t n = front.size();
  std::vector<double> dist(n, 0.0);
  if (n <= 2) {
    std::fill(dist.begin(), dist.end(), kInfiniteCrowding);
    return dist;
  }
  std::vector<std::size_t> order(n);
  for (std::size_t k = 0; k < kObjectiveCount; ++k) {
    std::iota(order.begin(), order.end(), std::size_t{0});
    auto value = [&](std::size_t i) { return front[i].as_array()[k]; };
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return value(a) < value(b); });
    dist[order.front()] = kInfiniteCrowding;
    dist[order.back()] = kInfiniteCrowding;
    const double spread = value(order.back()) - value(order.front());
    if (spread <= 0.0) continue;
    for (std::size_t j = 1; j + 1 < n; ++j)
      dist[order[j]] += (value(order[j + 1]) - value(order[j - 1])) / spread;
  }
  return dist;
}

std::vector<std::size_t> select_survivors(std::vector<Individual>& pool, std::size_t count) {
  const Fronts fronts = non_dominated_sort(pool);
  std::vector<std::size_t> chosen;
  chosen.reserve(count);
  for (const auto& front : fronts) {
    std::vector<Objectives> objs;
    objs.reserve(front.size());
    for (std::size_t i : front) objs.push_back(*pool[i].objectives);
    const auto dist = crowding_distance(objs);
    for (std::size_t j = 0; j < front.size(); ++j) pool[front[j]].crowding = dist[j];

    if (chosen.size() >= count) continue;
    if (chosen.size() + front.size() <= count) {
      chosen.insert(chosen.end(), front.begin(), front.end());
      continue;
    }
    std::vector<std::size_t> order(front.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return dist[a] > dist[b]; });
    for (std::size_t j = 0; chosen.size() < count; ++j) chosen.push_back(front[order[j]]);
  }
  std::sort(chosen.begin(), chosen.end());
  return chosen;
}

const Individual& select_representative(std::span<const Individual> front0) {
  if (front0.empty()) throw std::invalid_argument("cannot pick a representative from an empty front");
  const Individual* best = nullptr;
  for (const Individual& ind : front0) {
    if (!ind.objectives) throw std::logic_error("representative candidate is unevaluated");
    if (!best || ind.objectives->as_array() < best->objectives->as_array()) best = &ind;
  }
  return *best;
}

}  // namespace evothresh
