#include "evothresh/io.hpp"

#include <charconv>
#include <cmath>
#include <ctime>
#include <fstream>
#include <sstream>

namespace evothresh {

namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split(std::string_view line, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = line.find(sep, start);
    out.push_back(trim(line.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

std::string to_string(std::size_t v) { return std::to_string(v); }

std::ofstream open_out(const std::filesystem::path& file) {
  if (file.has_parent_path()) std::filesystem::create_directories(file.parent_path());
  std::ofstream out(file, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + file.string());
  return out;
}

std::vector<std::string> stat_cells(const SummaryStat& s) { return {format_real(s.mean), format_real(s.stddev)}; }

void append(std::vector<std::string>& row, std::vector<std::string> more) {
  row.insert(row.end(), std::make_move_iterator(more.begin()), std::make_move_iterator(more.end()));
}

const std::vector<std::string> kAggregateHeader{
    "n_genomes",        "n_reps",           "avg_pos_diff_mean", "avg_pos_diff_sd",
    "path_len_diff_mean", "path_len_diff_sd", "tracker_len_mean",  "tracker_len_sd",
    "avg_switches_mean", "avg_switches_sd"};

std::vector<std::string> aggregate_cells(const AggregateReport& a) {
  std::vector<std::string> row{to_string(a.n_genomes), to_string(a.n_reps)};
  append(row, stat_cells(a.avg_pos_diff));
  append(row, stat_cells(a.path_len_diff));
  append(row, stat_cells(a.tracker_len));
  append(row, stat_cells(a.avg_switches));
  return row;
}

}  // namespace

std::string format_real(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

std::string format_real17(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

double parse_real(std::string_view s) {
  double v = 0.0;
  const auto* end = s.data() + s.size();
  const auto res = std::from_chars(s.data(), end, v);
  if (res.ec != std::errc() || res.ptr != end)
    throw std::invalid_argument("not a number: '" + std::string(s) + "'");
  return v;
}

void write_genome(const ThresholdMatrix& genome, std::ostream& out) {
  out << "# evothresh genome\n";
  out << "# swarm_size=" << genome.agents() << "\n";
  out << "# tasks=NORTH,EAST,SOUTH,WEST\n";
  out << "north,east,south,west\n";
  for (std::size_t i = 0; i < genome.agents(); ++i) {
    for (Task t : kTasks) {
      if (t != Task::North) out << ',';
      out << format_real17(genome(i, t));
    }
    out << '\n';
  }
}

void write_genome(const ThresholdMatrix& genome, const std::filesystem::path& file) {
  auto out = open_out(file);
  write_genome(genome, out);
}

ThresholdMatrix read_genome(std::istream& in, std::optional<std::size_t> expected_agents) {
  using Kind = GenomeFileError::Kind;
  std::optional<std::size_t> declared;
  std::vector<double> values;
  std::size_t rows = 0;
  bool header_seen = false;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string t = trim(line);
    if (t.empty()) continue;
    if (t[0] == '#') {
      const auto pos = t.find("swarm_size=");
      if (pos != std::string::npos) {
        try {
          declared = static_cast<std::size_t>(std::stoull(t.substr(pos + 11)));
        } catch (const std::exception&) {
          throw GenomeFileError(Kind::Syntax, "line " + std::to_string(lineno) + ": bad swarm_size");
        }
      }
      continue;
    }
    if (!header_seen && (t[0] == 'n' || t[0] == 'N')) {
      header_seen = true;
      continue;
    }
    const auto cells = split(t, ',');
    if (cells.size() != kTaskCount)
      throw GenomeFileError(Kind::Columns, "line " + std::to_string(lineno) + ": expected 4 columns, found " +
                                               std::to_string(cells.size()));
    for (const auto& c : cells) {
      double v = 0.0;
      try {
        v = parse_real(c);
      } catch (const std::invalid_argument&) {
        throw GenomeFileError(Kind::Syntax, "line " + std::to_string(lineno) + ": " + c + " is not a number");
      }
      if (!(v >= 0.0 && v <= 1.0))
        throw GenomeFileError(Kind::Range, "line " + std::to_string(lineno) + ": threshold " + c +
                                               " outside [0,1]");
      values.push_back(v);
    }
    ++rows;
  }
  if (declared && *declared != rows)
    throw GenomeFileError(Kind::Rows, "file declares swarm_size=" + std::to_string(*declared) + " but has " +
                                          std::to_string(rows) + " rows");
  if (expected_agents && *expected_agents != rows)
    throw GenomeFileError(Kind::Rows, "expected " + std::to_string(*expected_agents) + " agents, file has " +
                                          std::to_string(rows) + " rows");
  if (rows == 0) throw GenomeFileError(Kind::Rows, "genome file has no rows");
  return ThresholdMatrix(std::move(values));
}

ThresholdMatrix read_genome(const std::filesystem::path& file, std::optional<std::size_t> expected_agents) {
  std::ifstream in(file);
  if (!in) throw std::runtime_error("cannot read genome file " + file.string());
  return read_genome(in, expected_agents);
}

void CsvTable::write(std::ostream& out) const {
  auto line = [&](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i) out << ',';
      out << cells[i];
    }
    out << '\n';
  };
  line(header);
  for (const auto& r : rows) line(r);
}

void CsvTable::write(const std::filesystem::path& file) const {
  auto out = open_out(file);
  write(out);
}

nlohmann::json CsvTable::to_json() const {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& r : rows) {
    nlohmann::json obj = nlohmann::json::object();
    for (std::size_t i = 0; i < header.size() && i < r.size(); ++i) {
      // Numbers stay numbers; labels stay strings.
      try {
        obj[header[i]] = parse_real(r[i]);
      } catch (const std::invalid_argument&) {
        obj[header[i]] = r[i];
      }
    }
    arr.push_back(std::move(obj));
  }
  return arr;
}

void write_json(const nlohmann::json& j, const std::filesystem::path& file) {
  auto out = open_out(file);
  out << j.dump(2) << '\n';
}

CsvTable metrics_table(const SimMetrics& m) {
  return {{"avg_pos_diff", "target_len", "tracker_len", "path_len_diff", "avg_switches"},
          {{format_real(m.avg_pos_diff), format_real(m.target_len), format_real(m.tracker_len),
            format_real(m.path_len_diff), format_real(m.avg_switches)}}};
}

CsvTable agents_table(const SimMetrics& m) {
  CsvTable t{{"agent", "theta_north", "theta_east", "theta_south", "theta_west", "count_north", "count_east",
              "count_south", "count_west", "switches"},
             {}};
  for (std::size_t i = 0; i < m.per_agent.size(); ++i) {
    const AgentState& a = m.per_agent[i];
    std::vector<std::string> row{to_string(i)};
    for (double th : a.thresholds) row.push_back(format_real(th));
    for (std::size_t c : a.activation_counts) row.push_back(to_string(c));
    row.push_back(to_string(a.switch_count));
    t.rows.push_back(std::move(row));
  }
  return t;
}

CsvTable trace_table(const SimMetrics& m) {
  CsvTable t{{"t", "target_x", "target_y", "tracker_x", "tracker_y"}, {}};
  for (const TracePoint& p : m.trace)
    t.rows.push_back({to_string(p.t), format_real(p.target.x), format_real(p.target.y), format_real(p.tracker.x),
                      format_real(p.tracker.y)});
  return t;
}

CsvTable path_table(const Path& p) {
  CsvTable t{{"t", "x", "y"}, {}};
  for (std::size_t i = 0; i < p.positions.size(); ++i)
    t.rows.push_back({to_string(i), format_real(p.positions[i].x), format_real(p.positions[i].y)});
  return t;
}

CsvTable reps_table(const TestReport& r) {
  CsvTable t{{"path", "rep", "avg_pos_diff", "path_len_diff", "tracker_len", "target_len", "avg_switches"}, {}};
  for (const RepRow& row : r.reps)
    t.rows.push_back({r.path, to_string(row.rep), format_real(row.avg_pos_diff), format_real(row.path_len_diff),
                      format_real(row.tracker_len), format_real(row.target_len), format_real(row.avg_switches)});
  return t;
}

CsvTable test_summary_table(const TestReport& r) {
  CsvTable t{{"path", "n_reps", "avg_pos_diff_mean", "avg_pos_diff_sd", "path_len_diff_mean", "path_len_diff_sd",
              "tracker_len_mean", "tracker_len_sd", "avg_switches_mean", "avg_switches_sd"},
             {}};
  std::vector<std::string> row{r.path, to_string(r.n_reps)};
  append(row, stat_cells(r.avg_pos_diff));
  append(row, stat_cells(r.path_len_diff));
  append(row, stat_cells(r.tracker_len));
  append(row, stat_cells(r.avg_switches));
  t.rows.push_back(std::move(row));
  return t;
}

CsvTable summary_table(std::span<const AggregateReport> reports, std::string_view label_header,
                       std::span<const std::string> labels) {
  CsvTable t;
  if (!label_header.empty()) t.header.emplace_back(label_header);
  t.header.emplace_back("path");
  append(t.header, kAggregateHeader);
  for (std::size_t i = 0; i < reports.size(); ++i) {
    std::vector<std::string> row;
    if (!label_header.empty()) row.push_back(i < labels.size() ? labels[i] : "");
    row.push_back(reports[i].path);
    append(row, aggregate_cells(reports[i]));
    t.rows.push_back(std::move(row));
  }
  return t;
}

CsvTable convergence_table(const GAResult& r) {
  CsvTable t{{"generation", "avg_pos_diff", "path_len_diff", "avg_switches"}, {}};
  for (const ConvergenceRow& row : r.log)
    t.rows.push_back({to_string(row.generation), format_real(row.representative.avg_pos_diff),
                      format_real(row.representative.path_len_diff), format_real(row.representative.avg_switches)});
  return t;
}

CsvTable population_table(const GAResult& r) {
  CsvTable t{{"index", "rank", "crowding", "avg_pos_diff", "path_len_diff", "avg_switches"}, {}};
  for (std::size_t i = 0; i < r.population.size(); ++i) {
    const Individual& ind = r.population[i];
    t.rows.push_back({to_string(i), ind.rank ? to_string(*ind.rank) : "", ind.crowding ? format_real(*ind.crowding) : "",
                      format_real(ind.objectives->avg_pos_diff), format_real(ind.objectives->path_len_diff),
                      format_real(ind.objectives->avg_switches)});
  }
  return t;
}

CsvTable generalization_table(const GeneralizationMatrix& gm) {
  CsvTable t;
  t.header = {"train_path", "test_path"};
  append(t.header, kAggregateHeader);
  for (std::size_t i = 0; i < gm.train_paths.size(); ++i)
    for (std::size_t j = 0; j < gm.test_paths.size(); ++j) {
      std::vector<std::string> row{gm.train_paths[i], gm.test_paths[j]};
      append(row, aggregate_cells(gm.cells[i][j]));
      t.rows.push_back(std::move(row));
    }
  return t;
}

CsvTable sweep_table(std::string_view sweep, std::span<const SweepRow> rows) {
  CsvTable t;
  t.header = {"sweep", "value", "path"};
  append(t.header, kAggregateHeader);
  for (const SweepRow& r : rows) {
    std::vector<std::string> row{std::string(sweep), format_real(r.value), r.report.path};
    append(row, aggregate_cells(r.report));
    t.rows.push_back(std::move(row));
  }
  return t;
}

CsvTable histogram_table(std::span<const std::size_t> counts) {
  CsvTable t{{"bucket", "lower", "upper", "count"}, {}};
  const auto n = static_cast<double>(counts.size());
  for (std::size_t b = 0; b < counts.size(); ++b)
    t.rows.push_back({to_string(b), format_real(static_cast<double>(b) / n), format_real(static_cast<double>(b + 1) / n),
                      to_string(counts[b])});
  return t;
}

CsvTable timelapse_table(const GAResult& r, Task task, std::size_t n_buckets) {
  CsvTable t{{"generation", "task", "bucket", "count", "avg_pos_diff"}, {}};
  for (const ConvergenceRow& row : r.log) {
    const auto counts = threshold_histogram(row.genome, task, n_buckets);
    for (std::size_t b = 0; b < counts.size(); ++b)
      t.rows.push_back({to_string(row.generation), std::string(task_name(task)), to_string(b), to_string(counts[b]),
                        format_real(row.representative.avg_pos_diff)});
  }
  return t;
}

std::string report_stem(std::string_view experiment, std::string_view train, std::string_view test,
                        std::optional<double> value) {
  std::string s(experiment);
  if (!train.empty()) s += "__train-" + std::string(train);
  if (!test.empty()) s += "__test-" + std::string(test);
  if (value) s += "__value-" + format_real(*value);
  return s;
}

nlohmann::json RunManifest::to_json() const {
  return {{"command", command}, {"config", config}, {"seed", seed}, {"version", version}, {"timestamp", timestamp}};
}

RunManifest RunManifest::from_json(const nlohmann::json& j) {
  RunManifest m;
  m.command = j.at("command").get<std::string>();
  m.config = j.at("config").get<std::map<std::string, std::string>>();
  m.seed = j.value("seed", std::uint64_t{0});
  m.version = j.value("version", std::string{});
  m.timestamp = j.value("timestamp", std::string{});
  return m;
}

std::string utc_timestamp() {
  const std::time_t now = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

}  // namespace evothresh
