#include "evothresh/cli.hpp"

#include <algorithm>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <sstream>

#include <CLI11.hpp>

#include "evothresh/io.hpp"

namespace evothresh {

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

struct Settings {
  std::string config;
  std::string out_dir = "evothresh_out";
  std::uint64_t seed = 1;
  int workers = 0;

  std::size_t swarm_size = 50;
  std::size_t timesteps = 500;
  double step_len = 3.0;
  double step_ratio = 2.0;
  double range = 20.0;
  std::string policy = "deterministic";
  double learn_delta = 0.01;
  double forget_delta = 0.01;

  std::string path = "circle";
  double radius = 10.0;
  double revolutions = 0.0;  // 0: uncapped
  double edge_length = 50.0;
  double amplitude = 10.0;
  double period = 40.0;
  double turn_sigma = 1.0;

  std::size_t pop_size = 100;
  std::size_t generations = 300;
  std::size_t training_timesteps = 200;
  double crossover_prob = 0.9;
  double gene_swap_prob = 0.7;
  double mutation_prob_crossed = 0.2;
  double mutation_prob_uncrossed = 1.0;
  double mutation_delta = 0.1;
  double expected_mutations = 2.0;
  std::size_t random_repeats = 3;
  std::size_t log_every = 10;

  std::size_t reps = 10;
  std::string genome;
  std::size_t uniform_genomes = 1;
  std::string train;
  std::string test_paths = "circle,diamond,random,scurve,square,zigzag,zigzag-w";
  std::string sweep = "circle-radius";
  std::string values = "5,10,50,150";
  std::size_t runs = 5;
  std::string task = "east";
  std::size_t buckets = 20;
  bool trace = false;
};

std::string to_text(const std::string& v) { return v; }
std::string to_text(bool v) { return v ? "true" : "false"; }
std::string to_text(double v) { return format_real(v); }
template <typename T>
  requires std::is_integral_v<T>
std::string to_text(T v) {
  return std::to_string(v);
}

void from_text(const std::string& s, std::string& v) { v = s; }
void from_text(const std::string& s, bool& v) {
  if (s == "true" || s == "1") v = true;
  else if (s == "false" || s == "0") v = false;
  else throw ConfigError("expected true/false, got '" + s + "'");
}
void from_text(const std::string& s, double& v) {
  try {
    v = parse_real(s);
  } catch (const std::invalid_argument&) {
    throw ConfigError("expected a number, got '" + s + "'");
  }
}
template <typename T>
  requires std::is_integral_v<T>
void from_text(const std::string& s, T& v) {
  try {
    std::size_t used = 0;
    const long long parsed = std::stoll(s, &used);
    if (used != s.size() || parsed < 0) throw std::invalid_argument(s);
    v = static_cast<T>(parsed);
  } catch (const std::exception&) {
    throw ConfigError("expected a non-negative integer, got '" + s + "'");
  }
}

/// One subcommand plus the options it records in its manifest.
class Command {
 public:
  Command(CLI::App& root, const std::string& name, const std::string& description)
      : app_(root.add_subcommand(name, description)), name_(name) {}

  template <typename T>
  Command& option(const std::string& key, T& var, const std::string& help) {
    app_->add_option("--" + key, var, help)->capture_default_str();
    bind(key, var);
    return *this;
  }

  Command& flag(const std::string& key, bool& var, const std::string& help) {
    app_->add_flag("--" + key, var, help);
    bind(key, var);
    return *this;
  }

  void apply(const std::map<std::string, std::string>& kv) {
    for (const auto& [key, value] : kv) {
      auto it = setters_.find(key);
      if (it == setters_.end()) throw ConfigError("unknown configuration key '" + key + "' for " + name_);
      it->second(value);
    }
  }

  std::map<std::string, std::string> snapshot() const {
    std::map<std::string, std::string> out;
    for (const auto& [key, get] : getters_) out[key] = get();
    return out;
  }

  CLI::App* app() const { return app_; }
  const std::string& name() const { return name_; }

 private:
  template <typename T>
  void bind(const std::string& key, T& var) {
    getters_[key] = [&var] { return to_text(var); };
    setters_[key] = [&var](const std::string& s) { from_text(s, var); };
  }

  CLI::App* app_;
  std::string name_;
  std::map<std::string, std::function<std::string()>> getters_;
  std::map<std::string, std::function<void(const std::string&)>> setters_;
};

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item.erase(0, item.find_first_not_of(" \t"));
    item.erase(item.find_last_not_of(" \t") + 1);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

std::string trim_copy(std::string s) {
  s.erase(0, s.find_first_not_of(" \t\r"));
  s.erase(s.find_last_not_of(" \t\r") + 1);
  return s;
}

/// Flat `key = value` file, or a JSON run manifest.
std::map<std::string, std::string> load_config(const std::string& file, const std::string& command) {
  std::ifstream in(file);
  if (!in) throw ConfigError("cannot read config file " + file);
  std::stringstream buf;
  buf << in.rdbuf();
  const std::string text = buf.str();
  const auto first = text.find_first_not_of(" \t\r\n");
  std::map<std::string, std::string> kv;
  if (first != std::string::npos && text[first] == '{') {
    const RunManifest m = RunManifest::from_json(json::parse(text));
    if (m.command != command)
      throw ConfigError("manifest is for '" + m.command + "', not '" + command + "'");
    kv = m.config;
  } else {
    std::stringstream ss(text);
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(ss, line)) {
      ++lineno;
      line = trim_copy(line);
      if (line.empty() || line[0] == '#' || line[0] == ';') continue;
      const auto eq = line.find('=');
      if (eq == std::string::npos)
        throw ConfigError(file + ":" + std::to_string(lineno) + ": expected key = value");
      std::string key = trim_copy(line.substr(0, eq));
      if (key.rfind("--", 0) == 0) key.erase(0, 2);
      kv[key] = trim_copy(line.substr(eq + 1));
    }
  }
  kv.erase("config");
  return kv;
}

ActivationPolicy parse_policy(const Settings& s) {
  if (s.policy == "deterministic") return Deterministic{};
  if (s.policy == "probabilistic") return Probabilistic{};
  if (s.policy == "dynamic") return Dynamic{s.learn_delta, s.forget_delta};
  throw ConfigError("unknown policy '" + s.policy + "' (deterministic, probabilistic, dynamic)");
}

SimConfig sim_config(const Settings& s, std::size_t timesteps) {
  SimConfig c;
  c.swarm_size = s.swarm_size;
  c.timesteps = timesteps;
  c.target_step_len = s.step_len;
  c.step_ratio = s.step_ratio;
  c.stimulus_range = s.range;
  c.policy = parse_policy(s);
  c.validate();
  return c;
}

PathSpec path_spec(const Settings& s, const std::string& name) {
  PathSpec p = default_path(name);
  std::visit(
      [&](auto& v) {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, Circle>) {
          v.radius = s.radius;
          if (s.revolutions > 0.0) v.revolutions_cap = s.revolutions;
        } else if constexpr (std::is_same_v<T, Square> || std::is_same_v<T, Diamond>) {
          v.edge_length = s.edge_length;
        } else if constexpr (std::is_same_v<T, RandomWalk>) {
          v.turn_sigma = s.turn_sigma;
        } else {
          v.amplitude = s.amplitude;
          v.period = s.period;
        }
      },
      p);
  validate_path(p, s.step_len);
  return p;
}

GAConfig ga_config(const Settings& s) {
  GAConfig g;
  g.pop_size = s.pop_size;
  g.generations = s.generations;
  g.crossover_prob = s.crossover_prob;
  g.gene_swap_prob = s.gene_swap_prob;
  g.mutation_prob_crossed = s.mutation_prob_crossed;
  g.mutation_prob_uncrossed = s.mutation_prob_uncrossed;
  g.mutation_delta_halfwidth = s.mutation_delta;
  g.expected_agent_mutations = s.expected_mutations;
  g.eval_repeats_random_path = s.random_repeats;
  g.training_timesteps = s.training_timesteps;
  g.log_every = s.log_every;
  g.seed = s.seed;
  g.validate();
  return g;
}

TestSetup test_setup(const Settings& s) {
  TestSetup t;
  t.sim = sim_config(s, s.timesteps);
  t.n_reps = s.reps;
  t.seed = s.seed;
  t.par.workers = s.workers;
  if (t.n_reps == 0) throw ConfigError("--reps must be at least 1");
  return t;
}

std::vector<fs::path> expand_genome_files(const std::string& list) {
  std::vector<fs::path> files;
  for (const auto& entry : split_list(list)) {
    const fs::path p(entry);
    if (fs::is_directory(p)) {
      std::vector<fs::path> found;
      for (const auto& f : fs::directory_iterator(p))
        if (f.is_regular_file() && f.path().extension() == ".csv") found.push_back(f.path());
      std::sort(found.begin(), found.end());
      files.insert(files.end(), found.begin(), found.end());
    } else {
      files.push_back(p);
    }
  }
  return files;
}

std::vector<ThresholdMatrix> load_genomes(const std::string& list, std::size_t agents) {
  std::vector<ThresholdMatrix> out;
  for (const auto& f : expand_genome_files(list)) out.push_back(read_genome(f, agents));
  return out;
}

ThresholdMatrix load_one_genome(const Settings& s) {
  if (s.genome.empty()) throw ConfigError("--genome is required");
  auto g = load_genomes(s.genome, s.swarm_size);
  if (g.size() != 1) throw ConfigError("expected exactly one genome file, got " + std::to_string(g.size()));
  return g.front();
}

void write_both(const CsvTable& t, const fs::path& dir, const std::string& stem) {
  t.write(dir / (stem + ".csv"));
  write_json(t.to_json(), dir / (stem + ".json"));
}

// ---- subcommands ---------------------------------------------------------

void run_simulate(const Settings& s, const fs::path& dir, std::ostream& out) {
  const PathSpec p = path_spec(s, s.path);
  Rng path_rng(derive_seed(s.seed, {stream::kPath}));
  const Path path = generate_path(p, s.timesteps, s.step_len, path_rng);
  SimConfig cfg = sim_config(s, path.steps());
  cfg.seed = derive_seed(s.seed, {stream::kTaskSelection});
  ThresholdMatrix genome;
  if (s.genome.empty()) {
    Rng g(derive_seed(s.seed, {stream::kGenome}));
    genome = random_thresholds(s.swarm_size, g);
  } else {
    genome = load_one_genome(s);
  }
  const SimMetrics m = run_simulation(cfg, genome, path, s.trace);
  const std::string stem = report_stem("simulate", "", path_name(p));
  const CsvTable metrics = metrics_table(m);
  const CsvTable agents = agents_table(m);
  metrics.write(dir / (stem + "_metrics.csv"));
  agents.write(dir / (stem + "_agents.csv"));
  json j{{"metrics", metrics.to_json().at(0)}, {"agents", agents.to_json()}};
  if (s.trace) {
    const CsvTable trace = trace_table(m);
    trace.write(dir / (stem + "_trace.csv"));
    j["trace"] = trace.to_json();
  }
  write_json(j, dir / (stem + ".json"));
  out << "avg_pos_diff=" << format_real(m.avg_pos_diff) << " tracker_len=" << format_real(m.tracker_len)
      << " path_len_diff=" << format_real(m.path_len_diff) << " avg_switches=" << format_real(m.avg_switches)
      << "\n";
}

CsvTable all_reps_table(const AggregateReport& agg) {
  CsvTable t;
  for (std::size_t g = 0; g < agg.per_genome.size(); ++g) {
    CsvTable r = reps_table(agg.per_genome[g]);
    if (t.header.empty()) {
      t.header = r.header;
      t.header.insert(t.header.begin(), "genome");
    }
    for (auto& row : r.rows) {
      row.insert(row.begin(), std::to_string(g));
      t.rows.push_back(std::move(row));
    }
  }
  return t;
}

void run_test(const Settings& s, const fs::path& dir, std::ostream& out) {
  const PathSpec p = path_spec(s, s.path);
  const TestSetup setup = test_setup(s);
  AggregateReport agg;
  if (s.genome.empty()) {
    agg = uniform_baseline(std::max<std::size_t>(s.uniform_genomes, 1), p, setup);
  } else {
    const auto genomes = load_genomes(s.genome, s.swarm_size);
    if (genomes.empty()) throw ConfigError("no genome files found in '" + s.genome + "'");
    agg = test_genomes(genomes, p, setup);
  }
  const std::string stem = report_stem("test", "", path_name(p));
  const CsvTable reps = all_reps_table(agg);
  const CsvTable summary = summary_table(std::span<const AggregateReport>(&agg, 1));
  reps.write(dir / (stem + "_reps.csv"));
  summary.write(dir / (stem + "_summary.csv"));
  write_json({{"summary", summary.to_json().at(0)}, {"reps", reps.to_json()}}, dir / (stem + ".json"));
  out << path_name(p) << ": avg_pos_diff=" << format_real(agg.avg_pos_diff.mean)
      << " tracker_len=" << format_real(agg.tracker_len.mean) << " avg_switches=" << format_real(agg.avg_switches.mean)
      << " (" << agg.n_genomes << " genome(s) x " << agg.n_reps << " reps)\n";
}

void run_evolve(const Settings& s, const fs::path& dir, std::ostream& out) {
  const GAConfig ga = ga_config(s);
  const EvalSpec spec = training_spec(ga, path_spec(s, s.path), sim_config(s, ga.training_timesteps));
  const GAResult res = run_ga(ga, spec, s.seed, Parallelism{s.workers});
  const Task task = parse_task(s.task);

  write_both(convergence_table(res), dir, "convergence");
  population_table(res).write(dir / "population.csv");
  timelapse_table(res, task, s.buckets).write(dir / ("timelapse__task-" + std::string(task_name(task)) + ".csv"));
  const Individual& rep = res.representative();
  write_genome(rep.genome, dir / "representative.csv");
  const auto front = res.front0();
  fs::remove_all(dir / "front0");
  for (std::size_t k = 0; k < front.size(); ++k) {
    char name[32];
    std::snprintf(name, sizeof name, "genome_%03zu.csv", k);
    write_genome(res.population[front[k]].genome, dir / "front0" / name);
  }
  out << "generations=" << ga.generations << " front0=" << front.size()
      << " representative avg_pos_diff=" << format_real(rep.objectives->avg_pos_diff)
      << " path_len_diff=" << format_real(rep.objectives->path_len_diff)
      << " avg_switches=" << format_real(rep.objectives->avg_switches) << "\n";
}

std::vector<TrainedSet> parse_train(const Settings& s) {
  std::vector<TrainedSet> sets;
  for (const auto& item : split_list(s.train)) {
    const auto eq = item.find('=');
    if (eq == std::string::npos || eq == 0) throw ConfigError("--train entries look like label=genome_file_or_dir");
    const std::string label = item.substr(0, eq);
    auto genomes = load_genomes(item.substr(eq + 1), s.swarm_size);
    auto it = std::find_if(sets.begin(), sets.end(), [&](const TrainedSet& t) { return t.label == label; });
    if (it == sets.end()) {
      sets.push_back({label, {}});
      it = sets.end() - 1;
    }
    it->genomes.insert(it->genomes.end(), genomes.begin(), genomes.end());
  }
  if (sets.empty()) throw ConfigError("--train is required");
  return sets;
}

void run_generalize(const Settings& s, const fs::path& dir, std::ostream& out) {
  const auto trained = parse_train(s);
  std::vector<PathSpec> tests;
  for (const auto& name : split_list(s.test_paths)) tests.push_back(path_spec(s, name));
  const GeneralizationMatrix gm = generalization_matrix(trained, tests, test_setup(s));
  write_both(generalization_table(gm), dir, "generalize");
  for (std::size_t i = 0; i < gm.train_paths.size(); ++i)
    for (std::size_t j = 0; j < gm.test_paths.size(); ++j) {
      const auto& cell = gm.cells[i][j];
      summary_table(std::span<const AggregateReport>(&cell, 1))
          .write(dir / (report_stem("generalize", gm.train_paths[i], gm.test_paths[j]) + ".csv"));
      out << gm.train_paths[i] << " -> " << gm.test_paths[j] << ": " << format_real(cell.avg_pos_diff.mean) << "\n";
    }
}

SweepSpec parse_sweep(const Settings& s) {
  std::vector<double> v;
  for (const auto& item : split_list(s.values)) {
    double x = 0.0;
    from_text(item, x);
    v.push_back(x);
  }
  if (s.sweep == "circle-radius") return CircleRadius{v};
  if (s.sweep == "zigzag-period") return ZigZagPeriod{v};
  if (s.sweep == "scurve-period") return SCurvePeriod{v};
  if (s.sweep == "circle-revolutions") return CircleRevolutions{v};
  throw ConfigError("unknown sweep '" + s.sweep + "'");
}

void run_sweep(const Settings& s, const fs::path& dir, std::ostream& out) {
  const SweepSpec sweep = parse_sweep(s);
  std::vector<ThresholdMatrix> genomes;
  if (!std::holds_alternative<CircleRevolutions>(sweep)) genomes = load_genomes(s.genome, s.swarm_size);
  SweepTraining training;
  training.ga = ga_config(s);
  training.runs = s.runs;
  training.seed = s.seed;
  training.radius = s.radius;
  const auto rows = parameter_sweep(genomes, sweep, test_setup(s), training);
  const std::string kind = sweep_name(sweep);
  write_both(sweep_table(kind, rows), dir, report_stem("sweep", "", kind));
  for (const SweepRow& r : rows) {
    summary_table(std::span<const AggregateReport>(&r.report, 1))
        .write(dir / (report_stem("sweep", "", kind, r.value) + ".csv"));
    out << kind << "=" << format_real(r.value) << ": avg_pos_diff=" << format_real(r.report.avg_pos_diff.mean) << "\n";
  }
}

void run_shuffle(const Settings& s, const fs::path& dir, std::ostream& out) {
  const ThresholdMatrix g = load_one_genome(s);
  Rng rng(derive_seed(s.seed, {stream::kGenome}));
  write_genome(shuffle_thresholds(g, rng), dir / "shuffled_genome.csv");
  out << "wrote " << (dir / "shuffled_genome.csv").string() << "\n";
}

void run_histogram(const Settings& s, const fs::path& dir, std::ostream& out) {
  const ThresholdMatrix g = load_one_genome(s);
  const Task task = parse_task(s.task);
  const auto counts = threshold_histogram(g, task, s.buckets);
  write_both(histogram_table(counts), dir, "histogram__task-" + std::string(task_name(task)));
  for (std::size_t c : counts) out << c << ' ';
  out << "\n";
}

void run_path_dump(const Settings& s, const fs::path& dir, std::ostream& out) {
  const PathSpec p = path_spec(s, s.path);
  Rng rng(derive_seed(s.seed, {stream::kPath}));
  const Path path = generate_path(p, s.timesteps, s.step_len, rng);
  path_table(path).write(dir / ("path__" + path_name(p) + ".csv"));
  out << path_name(p) << ": " << path.steps() << " steps, length " << format_real(path.length()) << "\n";
}

using Handler = std::function<void(const Settings&, const fs::path&, std::ostream&)>;

void add_common(Command& c, Settings& s) {
  c.app()->add_option("--config", s.config, "Flat key=value config file or a run manifest");
  c.option("out-dir", s.out_dir, "Output directory")
      .option("seed", s.seed, "Process seed")
      .option("workers", s.workers, "Worker threads (0 = all cores)");
}

void add_sim(Command& c, Settings& s) {
  c.option("swarm-size", s.swarm_size, "Agents per swarm")
      .option("step-len", s.step_len, "Target step length")
      .option("step-ratio", s.step_ratio, "Max tracker speed / target speed")
      .option("range", s.range, "Stimulus range (distance at which demand saturates)")
      .option("policy", s.policy, "deterministic | probabilistic | dynamic")
      .option("learn-delta", s.learn_delta, "Dynamic policy: threshold decrease on activation")
      .option("forget-delta", s.forget_delta, "Dynamic policy: threshold increase for other tasks");
}

void add_geometry(Command& c, Settings& s) {
  c.option("radius", s.radius, "circle radius")
      .option("revolutions", s.revolutions, "circle revolutions cap (0 = none)")
      .option("edge-length", s.edge_length, "square/diamond edge length")
      .option("amplitude", s.amplitude, "scurve/zigzag amplitude")
      .option("period", s.period, "scurve/zigzag period")
      .option("turn-sigma", s.turn_sigma, "random path turn standard deviation (radians)");
}

void add_path(Command& c, Settings& s) {
  c.option("path", s.path, "circle | diamond | random | scurve | square | zigzag | zigzag-w");
  add_geometry(c, s);
}

void add_ga(Command& c, Settings& s, bool timesteps_flag) {
  c.option("pop-size", s.pop_size, "GA population size")
      .option("generations", s.generations, "GA generations")
      .option("crossover-prob", s.crossover_prob, "Pair crossover probability")
      .option("gene-swap-prob", s.gene_swap_prob, "Uniform crossover swap probability")
      .option("mutation-prob-crossed", s.mutation_prob_crossed, "Mutation probability after crossover")
      .option("mutation-prob-uncrossed", s.mutation_prob_uncrossed, "Mutation probability without crossover")
      .option("mutation-delta", s.mutation_delta, "Half-width of the uniform mutation delta")
      .option("expected-mutations", s.expected_mutations, "Expected mutated agents per mutation")
      .option("random-repeats", s.random_repeats, "Simulations averaged per random-path evaluation")
      .option("log-every", s.log_every, "Convergence log cadence (generations)");
  if (timesteps_flag) c.option("timesteps", s.training_timesteps, "Training simulation timesteps");
  else c.option("training-timesteps", s.training_timesteps, "Training simulation timesteps");
}

void print_usage(std::ostream& out) {
  out << "usage: evothresh <command> [options]\n"
         "commands: evolve simulate test generalize sweep shuffle histogram path-dump replay\n"
         "run 'evothresh <command> --help' for options\n";
}

}  // namespace

int dispatch(std::span<const std::string> args, std::ostream& out, std::ostream& err) {
  if (args.empty()) {
    print_usage(err);
    return 2;
  }
  if (args[0] == "--help" || args[0] == "-h" || args[0] == "help") {
    print_usage(out);
    return 0;
  }
  if (args[0] == "--version") {
    out << "evothresh " << EVOTHRESH_VERSION << "\n";
    return 0;
  }

  if (args[0] == "replay") {
    // replay <manifest.json> [overrides...]
    if (args.size() < 2) {
      err << "error: replay needs a manifest file\n";
      return 2;
    }
    try {
      std::ifstream in(args[1]);
      if (!in) throw ConfigError("cannot read manifest " + args[1]);
      const RunManifest m = RunManifest::from_json(json::parse(in));
      std::vector<std::string> next{m.command, "--config", args[1]};
      next.insert(next.end(), args.begin() + 2, args.end());
      return dispatch(next, out, err);
    } catch (const std::exception& e) {
      err << "error: " << e.what() << "\n";
      return 1;
    }
  }

  Settings s;
  CLI::App root{"Evolve and analyse response thresholds for a threshold-based tracking swarm", "evothresh"};
  root.require_subcommand(1);

  std::vector<std::unique_ptr<Command>> commands;
  std::map<std::string, Handler> handlers;
  auto make = [&](const std::string& name, const std::string& desc, Handler h) -> Command& {
    commands.push_back(std::make_unique<Command>(root, name, desc));
    handlers[name] = std::move(h);
    add_common(*commands.back(), s);
    return *commands.back();
  };

  {
    Command& c = make("evolve", "Run the GA on one training path", run_evolve);
    add_sim(c, s);
    add_path(c, s);
    add_ga(c, s, true);
    c.option("task", s.task, "Task for the threshold timelapse histogram")
        .option("buckets", s.buckets, "Histogram buckets");
  }
  {
    Command& c = make("simulate", "Run one simulation", run_simulate);
    add_sim(c, s);
    add_path(c, s);
    c.option("timesteps", s.timesteps, "Simulation timesteps")
        .option("genome", s.genome, "Genome file (default: uniform random thresholds)")
        .flag("trace", s.trace, "Write the per-timestep target/tracker trace");
  }
  {
    Command& c = make("test", "Replicated simulations of genomes on one path", run_test);
    add_sim(c, s);
    add_path(c, s);
    c.option("timesteps", s.timesteps, "Simulation timesteps")
        .option("reps", s.reps, "Simulations per genome")
        .option("genome", s.genome, "Comma-separated genome files or directories (default: uniform random)")
        .option("uniform-genomes", s.uniform_genomes, "Random genomes to test when --genome is absent");
  }
  {
    Command& c = make("generalize", "Train-path x test-path matrix", run_generalize);
    add_sim(c, s);
    add_geometry(c, s);
    c.option("timesteps", s.timesteps, "Simulation timesteps")
        .option("reps", s.reps, "Simulations per genome")
        .option("train", s.train, "Comma-separated label=genome_file_or_dir entries")
        .option("test-paths", s.test_paths, "Comma-separated test path names");
  }
  {
    Command& c = make("sweep", "Test genomes across one path parameter", run_sweep);
    add_sim(c, s);
    add_ga(c, s, false);
    c.option("timesteps", s.timesteps, "Test simulation timesteps")
        .option("reps", s.reps, "Simulations per genome")
        .option("genome", s.genome, "Comma-separated genome files or directories")
        .option("sweep", s.sweep, "circle-radius | zigzag-period | scurve-period | circle-revolutions")
        .option("values", s.values, "Comma-separated parameter values")
        .option("runs", s.runs, "GA runs per value (circle-revolutions)")
        .option("radius", s.radius, "Circle radius for circle-revolutions");
  }
  {
    Command& c = make("shuffle", "Permute each task's thresholds across agents", run_shuffle);
    c.option("genome", s.genome, "Genome file").option("swarm-size", s.swarm_size, "Agents per swarm");
  }
  {
    Command& c = make("histogram", "Bucket one task's thresholds", run_histogram);
    c.option("genome", s.genome, "Genome file")
        .option("swarm-size", s.swarm_size, "Agents per swarm")
        .option("task", s.task, "north | east | south | west")
        .option("buckets", s.buckets, "Number of uniform buckets over [0,1]");
  }
  {
    Command& c = make("path-dump", "Write a target path as t,x,y rows", run_path_dump);
    add_path(c, s);
    c.option("timesteps", s.timesteps, "Path steps").option("step-len", s.step_len, "Step length");
  }

  auto found = std::find_if(commands.begin(), commands.end(), [&](const auto& c) { return c->name() == args[0]; });

  try {
    if (found != commands.end()) {
      for (std::size_t i = 1; i < args.size(); ++i) {
        std::string file;
        if (args[i] == "--config" && i + 1 < args.size()) file = args[i + 1];
        else if (args[i].rfind("--config=", 0) == 0) file = args[i].substr(9);
        if (!file.empty()) (*found)->apply(load_config(file, args[0]));
      }
    }
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    root.parse(reversed);
  } catch (const CLI::ParseError& e) {
    return root.exit(e, out, err);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }

  Command& cmd = **found;
  try {
    const fs::path dir(s.out_dir);
    fs::create_directories(dir);
    handlers[cmd.name()](s, dir, out);
    RunManifest m;
    m.command = cmd.name();
    m.config = cmd.snapshot();
    m.seed = s.seed;
    m.timestamp = utc_timestamp();
    write_json(m.to_json(), dir / "manifest.json");
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}

int dispatch(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return dispatch(args, std::cout, std::cerr);
}

}  // namespace evothresh
