#pragma once

#include <filesystem>
#include <iosfwd>
#include <map>

#include <json.hpp>

#include "evothresh/experiments.hpp"

namespace evothresh {

/// Why a genome file was rejected.
class GenomeFileError : public std::runtime_error {
 public:
  enum class Kind { Syntax, Range, Columns, Rows };

  GenomeFileError(Kind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

/// Shortest round-trip decimal form, locale independent ("0.1", "1e-07", "inf").
std::string format_real(double v);
/// 17 significant digits, locale independent.
std::string format_real17(double v);
double parse_real(std::string_view s);

// Genome file layout:
//   # evothresh genome
//   # swarm_size=50
//   # tasks=NORTH,EAST,SOUTH,WEST
//   north,east,south,west
//   <m rows of four values>
void write_genome(const ThresholdMatrix& genome, std::ostream& out);
void write_genome(const ThresholdMatrix& genome, const std::filesystem::path& file);
/// `expected_agents`, when given, must match the row count too.
ThresholdMatrix read_genome(std::istream& in, std::optional<std::size_t> expected_agents = std::nullopt);
ThresholdMatrix read_genome(const std::filesystem::path& file,
                            std::optional<std::size_t> expected_agents = std::nullopt);

/// A header line plus rows; every value pre-formatted.
struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  void write(std::ostream& out) const;
  void write(const std::filesystem::path& file) const;
  /// Array of objects keyed by the header names.
  nlohmann::json to_json() const;
};

void write_json(const nlohmann::json& j, const std::filesystem::path& file);

CsvTable metrics_table(const SimMetrics& m);
CsvTable agents_table(const SimMetrics& m);
CsvTable trace_table(const SimMetrics& m);
CsvTable path_table(const Path& p);
CsvTable reps_table(const TestReport& r);
CsvTable summary_table(std::span<const AggregateReport> reports, std::string_view label_header = "",
                       std::span<const std::string> labels = {});
CsvTable test_summary_table(const TestReport& r);
CsvTable convergence_table(const GAResult& r);
CsvTable population_table(const GAResult& r);
CsvTable generalization_table(const GeneralizationMatrix& gm);
CsvTable sweep_table(std::string_view sweep, std::span<const SweepRow> rows);
CsvTable histogram_table(std::span<const std::size_t> counts);
/// Histogram of one task for every logged generation.
CsvTable timelapse_table(const GAResult& r, Task task, std::size_t n_buckets = 20);

/// Report file stem: experiment plus whichever of train/test/value apply.
std::string report_stem(std::string_view experiment, std::string_view train = "",
                        std::string_view test = "", std::optional<double> value = std::nullopt);

struct RunManifest {
  std::string command;
  std::map<std::string, std::string> config;  // every option, defaults materialized
  std::uint64_t seed = 0;
  std::string version = EVOTHRESH_VERSION;
  std::string timestamp;  // UTC, ISO 8601

  nlohmann::json to_json() const;
  static RunManifest from_json(const nlohmann::json& j);
};

std::string utc_timestamp();

}  // namespace evothresh
