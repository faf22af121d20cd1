#include "evothresh/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace evothresh {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

RepRow run_rep(const ThresholdMatrix& genome, const PathSpec& path_spec, const SimConfig& sim,
               std::uint64_t seed, std::size_t rep) {
  Rng path_rng(derive_seed(seed, {stream::kPath, rep}));
  const Path path = generate_path(path_spec, sim.timesteps, sim.target_step_len, path_rng);
  SimConfig cfg = sim;
  cfg.timesteps = path.steps();
  cfg.seed = derive_seed(seed, {stream::kTaskSelection, rep});
  const SimMetrics m = run_simulation(cfg, genome, path);
  return {rep, m.avg_pos_diff, m.path_len_diff, m.tracker_len, m.target_len, m.avg_switches};
}

TestReport build_report(const PathSpec& path, std::vector<RepRow> rows) {
  TestReport r;
  r.path = path_name(path);
  r.n_reps = rows.size();
  auto column = [&](double RepRow::*field) {
    std::vector<double> v;
    v.reserve(rows.size());
    for (const RepRow& row : rows) v.push_back(row.*field);
    return summarize(v);
  };
  r.avg_pos_diff = column(&RepRow::avg_pos_diff);
  r.path_len_diff = column(&RepRow::path_len_diff);
  r.tracker_len = column(&RepRow::tracker_len);
  r.avg_switches = column(&RepRow::avg_switches);
  r.reps = std::move(rows);
  return r;
}

void check_setup(const TestSetup& setup) {
  if (setup.n_reps == 0) throw ConfigError("n_reps must be at least 1");
  setup.sim.validate();
}

TestReport test_serial(const ThresholdMatrix& genome, const PathSpec& path, const TestSetup& setup) {
  std::vector<RepRow> rows(setup.n_reps);
  for (std::size_t r = 0; r < setup.n_reps; ++r) rows[r] = run_rep(genome, path, setup.sim, setup.seed, r);
  return build_report(path, std::move(rows));
}

TestSetup with_seed(const TestSetup& setup, std::uint64_t seed) {
  TestSetup s = setup;
  s.seed = seed;
  return s;
}

PathSpec with_sweep_value(const SweepSpec& sweep, double v) {
  return std::visit(overloaded{[&](const CircleRadius&) -> PathSpec { return Circle{v, std::nullopt}; },
                               [&](const ZigZagPeriod&) -> PathSpec { return ZigZag{10.0, v}; },
                               [&](const SCurvePeriod&) -> PathSpec { return SCurve{10.0, v}; },
                               [&](const CircleRevolutions&) -> PathSpec { return Circle{10.0, v}; }},
                    sweep);
}

}  // namespace

SummaryStat summarize(std::span<const double> values) {
  SummaryStat s;
  if (values.empty()) return s;
  const auto n = static_cast<double>(values.size());
  s.mean = std::accumulate(values.begin(), values.end(), 0.0) / n;
  if (values.size() > 1) {
    double ss = 0.0;
    for (double v : values) ss += (v - s.mean) * (v - s.mean);
    s.stddev = std::sqrt(ss / (n - 1.0));
  }
  return s;
}

TestSetup TestSetup::full_scale() { return TestSetup{}; }

TestSetup TestSetup::desk_scale() {
  TestSetup s;
  s.n_reps = 10;
  return s;
}

TestReport test_thresholds(const ThresholdMatrix& genome, const PathSpec& path, const TestSetup& setup) {
  check_setup(setup);
  std::vector<RepRow> rows(setup.n_reps);
  parallel_for(setup.n_reps, setup.par,
               [&](std::size_t r) { rows[r] = run_rep(genome, path, setup.sim, setup.seed, r); });
  return build_report(path, std::move(rows));
}

ThresholdMatrix shuffle_thresholds(const ThresholdMatrix& genome, Rng& rng) {
  ThresholdMatrix out = genome;
  const std::size_t m = genome.agents();
  std::vector<std::size_t> perm(m);
  for (Task t : kTasks) {
    std::iota(perm.begin(), perm.end(), std::size_t{0});
    std::shuffle(perm.begin(), perm.end(), rng);
    for (std::size_t i = 0; i < m; ++i) out(i, t) = genome(perm[i], t);
  }
  return out;
}

AggregateReport aggregate(std::span<const TestReport> reports) {
  AggregateReport agg;
  if (reports.empty()) return agg;
  agg.path = reports.front().path;
  agg.n_genomes = reports.size();
  agg.n_reps = reports.front().n_reps;
  auto pool = [&](SummaryStat TestReport::*field) {
    double mean_sum = 0.0;
    double ss = 0.0;
    double dof = 0.0;
    for (const TestReport& r : reports) {
      mean_sum += (r.*field).mean;
      const double k = static_cast<double>(r.n_reps) - 1.0;
      ss += k * (r.*field).stddev * (r.*field).stddev;
      dof += k;
    }
    return SummaryStat{mean_sum / static_cast<double>(reports.size()), dof > 0.0 ? std::sqrt(ss / dof) : 0.0};
  };
  agg.avg_pos_diff = pool(&TestReport::avg_pos_diff);
  agg.path_len_diff = pool(&TestReport::path_len_diff);
  agg.tracker_len = pool(&TestReport::tracker_len);
  agg.avg_switches = pool(&TestReport::avg_switches);
  agg.per_genome.assign(reports.begin(), reports.end());
  return agg;
}

AggregateReport test_genomes(std::span<const ThresholdMatrix> genomes, const PathSpec& path,
                             const TestSetup& setup) {
  check_setup(setup);
  if (genomes.empty()) throw ConfigError("no genomes to test");
  std::vector<TestReport> reports(genomes.size());
  parallel_for(genomes.size(), setup.par, [&](std::size_t g) {
    reports[g] = test_serial(genomes[g], path, with_seed(setup, derive_seed(setup.seed, {g})));
  });
  return aggregate(reports);
}

AggregateReport uniform_baseline(std::size_t n_genomes, const PathSpec& path, const TestSetup& setup) {
  std::vector<ThresholdMatrix> genomes;
  genomes.reserve(n_genomes);
  for (std::size_t g = 0; g < n_genomes; ++g) {
    Rng rng(derive_seed(setup.seed, {stream::kGenome, g}));
    genomes.push_back(random_thresholds(setup.sim.swarm_size, rng));
  }
  return test_genomes(genomes, path, setup);
}

AggregateReport dynamic_baseline(std::size_t n_genomes, const PathSpec& path, const TestSetup& setup,
                                 Dynamic deltas) {
  TestSetup s = setup;
  s.sim.policy = deltas;
  return uniform_baseline(n_genomes, path, s);
}

AggregateReport shuffled_baseline(std::span<const ThresholdMatrix> genomes, const PathSpec& path,
                                  const TestSetup& setup) {
  std::vector<ThresholdMatrix> shuffled;
  shuffled.reserve(genomes.size());
  for (std::size_t g = 0; g < genomes.size(); ++g) {
    Rng rng(derive_seed(setup.seed, {stream::kGenome, g}));
    shuffled.push_back(shuffle_thresholds(genomes[g], rng));
  }
  return test_genomes(shuffled, path, setup);
}

const AggregateReport& GeneralizationMatrix::cell(std::string_view train, std::string_view test) const {
  const auto ti = std::find(train_paths.begin(), train_paths.end(), train);
  const auto tj = std::find(test_paths.begin(), test_paths.end(), test);
  if (ti == train_paths.end() || tj == test_paths.end())
    throw std::out_of_range("no generalization cell for " + std::string(train) + " -> " + std::string(test));
  return cells[static_cast<std::size_t>(ti - train_paths.begin())][static_cast<std::size_t>(tj - test_paths.begin())];
}

GeneralizationMatrix generalization_matrix(std::span<const TrainedSet> trained,
                                           std::span<const PathSpec> test_paths,
                                           const TestSetup& setup) {
  if (trained.empty() || test_paths.empty()) throw ConfigError("generalization needs train and test paths");
  GeneralizationMatrix gm;
  for (const TrainedSet& t : trained) {
    if (t.genomes.empty()) throw ConfigError("training set '" + t.label + "' has no genomes");
    gm.train_paths.push_back(t.label);
  }
  for (const PathSpec& p : test_paths) gm.test_paths.push_back(path_name(p));
  gm.cells.resize(trained.size());
  for (std::size_t i = 0; i < trained.size(); ++i)
    for (std::size_t j = 0; j < test_paths.size(); ++j)
      gm.cells[i].push_back(
          test_genomes(trained[i].genomes, test_paths[j], with_seed(setup, derive_seed(setup.seed, {i, j}))));
  return gm;
}

std::string sweep_name(const SweepSpec& s) {
  return std::visit(overloaded{[](const CircleRadius&) { return "circle-radius"; },
                               [](const ZigZagPeriod&) { return "zigzag-period"; },
                               [](const SCurvePeriod&) { return "scurve-period"; },
                               [](const CircleRevolutions&) { return "circle-revolutions"; }},
                    s);
}

std::span<const double> sweep_values(const SweepSpec& s) {
  return std::visit([](const auto& v) { return std::span<const double>(v.values); }, s);
}

std::vector<SweepRow> parameter_sweep(std::span<const ThresholdMatrix> genomes, const SweepSpec& sweep,
                                      const TestSetup& setup, const SweepTraining& training) {
  const auto values = sweep_values(sweep);
  if (values.empty()) throw ConfigError("sweep has no values");
  for (double v : values)
    if (!(v > 0.0)) throw ConfigError("sweep values must be positive");

  const bool retrain = std::holds_alternative<CircleRevolutions>(sweep);
  if (!retrain && genomes.empty()) throw ConfigError("sweep needs at least one genome");

  std::vector<SweepRow> rows;
  for (std::size_t k = 0; k < values.size(); ++k) {
    const double v = values[k];
    const TestSetup cell = with_seed(setup, derive_seed(setup.seed, {k}));
    if (!retrain) {
      rows.push_back({v, test_genomes(genomes, with_sweep_value(sweep, v), cell)});
      continue;
    }
    Circle capped{training.radius, v};
    const EvalSpec spec = training_spec(training.ga, capped, setup.sim);
    std::vector<ThresholdMatrix> reps;
    for (std::size_t r = 0; r < training.runs; ++r) {
      const GAResult res = run_ga(training.ga, spec, derive_seed(training.seed, {k, r}), setup.par);
      reps.push_back(res.representative().genome);
    }
    rows.push_back({v, test_genomes(reps, Circle{training.radius, std::nullopt}, cell)});
  }
  return rows;
}

std::vector<std::size_t> threshold_histogram(const ThresholdMatrix& genome, Task task, std::size_t n_buckets) {
  if (n_buckets == 0) throw ConfigError("histogram needs at least one bucket");
  std::vector<std::size_t> counts(n_buckets, 0);
  for (double v : genome.column(task)) {
    auto b = static_cast<std::size_t>(v * static_cast<double>(n_buckets));
    ++counts[std::min(b, n_buckets - 1)];
  }
  return counts;
}

}  // namespace evothresh
