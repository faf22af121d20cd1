#pragma once

#include <map>

#include "evothresh/ga.hpp"

namespace evothresh {

struct SummaryStat {
  double mean = 0.0;
  double stddev = 0.0;  // sample standard deviation; 0 for a single value
};

SummaryStat summarize(std::span<const double> values);

/// One replicate of a test.
struct RepRow {
  std::size_t rep = 0;
  double avg_pos_diff = 0.0;
  double path_len_diff = 0.0;
  double tracker_len = 0.0;
  double target_len = 0.0;
  double avg_switches = 0.0;
};

struct TestReport {
  std::string path;
  std::size_t n_reps = 0;
  SummaryStat avg_pos_diff;
  SummaryStat path_len_diff;
  SummaryStat tracker_len;
  SummaryStat avg_switches;
  std::vector<RepRow> reps;
};

/// Settings shared by every replicated test.
struct TestSetup {
  SimConfig sim;  // timesteps = testing length (500); seed ignored
  std::size_t n_reps = 30;
  std::uint64_t seed = 0;
  Parallelism par;

  static TestSetup full_scale();
  static TestSetup desk_scale();
};

/// Runs n_reps simulations of `genome` on fresh paths; rep r draws its path
/// and task-selection streams from (seed, r).
TestReport test_thresholds(const ThresholdMatrix& genome, const PathSpec& path, const TestSetup& setup);

/// Each task column independently permuted across agents.
ThresholdMatrix shuffle_thresholds(const ThresholdMatrix& genome, Rng& rng);

/// Aggregate of several TestReports: mean of per-genome means and pooled
/// standard deviation.
struct AggregateReport {
  std::string path;
  std::size_t n_genomes = 0;
  std::size_t n_reps = 0;  // per genome
  SummaryStat avg_pos_diff;
  SummaryStat path_len_diff;
  SummaryStat tracker_len;
  SummaryStat avg_switches;
  std::vector<TestReport> per_genome;
};

AggregateReport aggregate(std::span<const TestReport> reports);

/// Tests every genome on `path` and aggregates. Genome g uses seed (seed, g).
AggregateReport test_genomes(std::span<const ThresholdMatrix> genomes, const PathSpec& path,
                             const TestSetup& setup);

/// Uniformly random thresholds from the GA initializer, tested and aggregated.
AggregateReport uniform_baseline(std::size_t n_genomes, const PathSpec& path, const TestSetup& setup);

/// Dynamic-threshold policy started from uniform random thresholds.
AggregateReport dynamic_baseline(std::size_t n_genomes, const PathSpec& path, const TestSetup& setup,
                                 Dynamic deltas = {});

/// Evolved genomes with their columns shuffled (one shuffle per genome).
AggregateReport shuffled_baseline(std::span<const ThresholdMatrix> genomes, const PathSpec& path,
                                  const TestSetup& setup);

struct TrainedSet {
  std::string label;  // training path name
  std::vector<ThresholdMatrix> genomes;
};

struct GeneralizationMatrix {
  std::vector<std::string> train_paths;
  std::vector<std::string> test_paths;
  /// cells[train][test]
  std::vector<std::vector<AggregateReport>> cells;

  const AggregateReport& cell(std::string_view train, std::string_view test) const;
};

/// Every (train, test) pair; cell (i, j) draws from (seed, i, j).
GeneralizationMatrix generalization_matrix(std::span<const TrainedSet> trained,
                                           std::span<const PathSpec> test_paths,
                                           const TestSetup& setup);

struct CircleRadius {
  std::vector<double> values;
};
struct ZigZagPeriod {
  std::vector<double> values;
};
struct SCurvePeriod {
  std::vector<double> values;
};
/// Training-time revolution caps; each value triggers fresh GA runs.
struct CircleRevolutions {
  std::vector<double> values;
};
using SweepSpec = std::variant<CircleRadius, ZigZagPeriod, SCurvePeriod, CircleRevolutions>;

std::string sweep_name(const SweepSpec& s);
std::span<const double> sweep_values(const SweepSpec& s);

/// GA settings consumed only by CircleRevolutions.
struct SweepTraining {
  GAConfig ga = GAConfig::desk_scale();
  std::size_t runs = 5;
  std::uint64_t seed = 0;
  double radius = 10.0;
};

struct SweepRow {
  double value = 0.0;
  AggregateReport report;
};

/// Tests `genomes` with the swept parameter at each value (everything else at
/// its default). CircleRevolutions ignores `genomes`: for each cap it evolves
/// `training.runs` fresh representatives on the capped circle and tests them
/// on the uncapped one.
std::vector<SweepRow> parameter_sweep(std::span<const ThresholdMatrix> genomes, const SweepSpec& sweep,
                                      const TestSetup& setup, const SweepTraining& training = {});

/// Agents per uniform-width bucket over [0,1] for one task; 1.0 lands in the
/// last bucket.
std::vector<std::size_t> threshold_histogram(const ThresholdMatrix& genome, Task task,
                                             std::size_t n_buckets = 20);

}  // namespace evothresh
