#include <doctest.h>

#include <clocale>
#include <cstring>
#include <sstream>

#include "evothresh/io.hpp"

using namespace evothresh;

namespace {

std::string genome_text(std::size_t declared, const std::vector<std::string>& rows) {
  std::string s = "# evothresh genome\n# swarm_size=" + std::to_string(declared) +
                  "\n# tasks=NORTH,EAST,SOUTH,WEST\nnorth,east,south,west\n";
  for (const auto& r : rows) s += r + "\n";
  return s;
}

GenomeFileError::Kind read_error(const std::string& text, std::optional<std::size_t> expected = std::nullopt) {
  std::istringstream in(text);
  try {
    read_genome(in, expected);
  } catch (const GenomeFileError& e) {
    return e.kind();
  }
  FAIL("no GenomeFileError thrown");
  return GenomeFileError::Kind::Syntax;
}

}  // namespace

TEST_CASE("number formatting") {
  CHECK(format_real(0.1) == "0.1");
  CHECK(format_real(1500.0) == "1500");
  CHECK(format_real(-2.5) == "-2.5");
  CHECK(parse_real("0.25") == 0.25);
  CHECK(parse_real("1e-3") == 0.001);
  CHECK_THROWS_AS(parse_real("0,25"), std::invalid_argument);
  CHECK_THROWS_AS(parse_real("abc"), std::invalid_argument);
  Rng rng(1);
  std::uniform_real_distribution<double> u(-1e6, 1e6);
  for (int k = 0; k < 1000; ++k) {
    const double v = u(rng);
    CHECK(parse_real(format_real(v)) == v);
    CHECK(parse_real(format_real17(v)) == v);
  }
}

TEST_CASE("formatting is locale independent") {
  const char* old = std::setlocale(LC_ALL, nullptr);
  const std::string saved = old ? old : "C";
  bool switched = false;
  for (const char* loc : {"de_DE.UTF-8", "de_DE.utf8", "fr_FR.UTF-8", "C.UTF-8"})
    if (std::setlocale(LC_ALL, loc)) {
      switched = true;
      break;
    }
  CHECK(format_real(0.5) == "0.5");
  CHECK(format_real17(0.5).find(',') == std::string::npos);
  CHECK(parse_real("0.5") == 0.5);
  std::ostringstream out;
  write_genome(ThresholdMatrix(1, 0.125), out);
  CHECK(out.str().find("0.125") != std::string::npos);
  std::setlocale(LC_ALL, saved.c_str());
  (void)switched;
}

TEST_CASE("genome round trip is bit-identical") {
  Rng rng(2);
  for (int k = 0; k < 20; ++k) {
    const auto g = random_thresholds(50, rng);
    std::stringstream buf;
    write_genome(g, buf);
    const auto back = read_genome(buf, 50);
    CHECK(back == g);
  }
  ThresholdMatrix edges({0.0, 1.0, 5e-324, 0.9999999999999999});
  std::stringstream buf;
  write_genome(edges, buf);
  CHECK(read_genome(buf) == edges);

  const auto file = std::filesystem::temp_directory_path() / "evothresh_test_genome.csv";
  const auto g = random_thresholds(50, rng);
  write_genome(g, file);
  CHECK(read_genome(file, 50) == g);
  std::filesystem::remove(file);
}

TEST_CASE("genome read errors are distinct") {
  using Kind = GenomeFileError::Kind;
  std::vector<std::string> rows(50, "0.1,0.2,0.3,0.4");
  {
    std::istringstream ok(genome_text(50, rows));
    CHECK(read_genome(ok, 50).agents() == 50);
  }

  auto bad = rows;
  bad[3] = "0.1,1.2,0.3,0.4";
  CHECK(read_error(genome_text(50, bad)) == Kind::Range);
  bad[3] = "0.1,-0.01,0.3,0.4";
  CHECK(read_error(genome_text(50, bad)) == Kind::Range);

  bad = rows;
  bad[7] = "0.1,0.2,0.3";
  CHECK(read_error(genome_text(50, bad)) == Kind::Columns);
  bad[7] = "0.1,0.2,0.3,0.4,0.5";
  CHECK(read_error(genome_text(50, bad)) == Kind::Columns);

  bad = rows;
  bad[1] = "0.1,x,0.3,0.4";
  CHECK(read_error(genome_text(50, bad)) == Kind::Syntax);

  std::vector<std::string> short_rows(49, "0.1,0.2,0.3,0.4");
  CHECK(read_error(genome_text(50, short_rows)) == Kind::Rows);
  CHECK(read_error(genome_text(49, short_rows), 50) == Kind::Rows);
  CHECK(read_error("") == Kind::Rows);

  CHECK_THROWS_AS(read_genome(std::filesystem::path("/nonexistent/genome.csv")), std::runtime_error);
}

TEST_CASE("csv tables and json mirrors") {
  CsvTable t;
  t.header = {"a", "b"};
  t.rows = {{"1", "x"}, {"2.5", "y"}};
  std::ostringstream out;
  t.write(out);
  CHECK(out.str() == "a,b\n1,x\n2.5,y\n");
  const auto j = t.to_json();
  REQUIRE(j.is_array());
  REQUIRE(j.size() == 2);
  CHECK(j[0]["a"] == 1);
  CHECK(j[1]["b"] == "y");

  SimMetrics m;
  m.avg_pos_diff = 1.5;
  m.per_agent.resize(3);
  m.trace = {{0, {0, 0}, {0, 0}}, {1, {1, 2}, {0.5, 1}}};
  const auto mt = metrics_table(m);
  CHECK(mt.rows.size() == 1);
  CHECK(mt.header.size() == mt.rows[0].size());
  CHECK(agents_table(m).rows.size() == 3);
  CHECK(trace_table(m).rows.size() == 2);

  Path p{{{0, 0}, {3, 0}, {3, 3}}};
  const auto pt = path_table(p);
  CHECK(pt.header == std::vector<std::string>{"t", "x", "y"});
  CHECK(pt.rows.size() == 3);
  CHECK(pt.rows[2] == std::vector<std::string>{"2", "3", "3"});
}

TEST_CASE("report tables") {
  TestSetup s;
  s.sim.timesteps = 30;
  s.n_reps = 30;
  const auto agg = uniform_baseline(2, Circle{}, s);
  const auto reps = reps_table(agg.per_genome[0]);
  CHECK(reps.rows.size() == 30);
  for (const auto& row : reps.rows) CHECK(row.size() == reps.header.size());
  const auto sum = summary_table(std::span<const AggregateReport>(&agg, 1));
  CHECK(sum.rows.size() == 1);
  CHECK(sum.header.size() == sum.rows[0].size());
  const std::vector<std::size_t> counts{1, 2, 3};
  CHECK(histogram_table(counts).rows.size() == 3);
}

TEST_CASE("report stems") {
  CHECK(report_stem("test", "", "circle") == "test__test-circle");
  CHECK(report_stem("generalize", "circle", "zigzag-w") == "generalize__train-circle__test-zigzag-w");
  CHECK(report_stem("sweep", "", "circle-radius", 50.0) == "sweep__test-circle-radius__value-50");
  CHECK(report_stem("evolve", "random") == "evolve__train-random");
}

TEST_CASE("run manifest round trip") {
  RunManifest m;
  m.command = "test";
  m.config = {{"seed", "7"}, {"path", "square"}};
  m.seed = 7;
  m.timestamp = utc_timestamp();
  const auto back = RunManifest::from_json(m.to_json());
  CHECK(back.command == "test");
  CHECK(back.config == m.config);
  CHECK(back.seed == 7);
  CHECK(back.version == EVOTHRESH_VERSION);
  CHECK(back.timestamp == m.timestamp);
  CHECK(m.timestamp.size() == 20);
  CHECK(m.timestamp.back() == 'Z');
}
