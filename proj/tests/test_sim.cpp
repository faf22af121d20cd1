#include <doctest.h>

#include <cmath>

#include "evothresh/paths.hpp"
#include "evothresh/sim.hpp"
#include "oracles.hpp"

using namespace evothresh;

namespace {

StimulusVector stim(PerTask<double> raw, double range = 20.0) {
  return {raw, normalize_stimuli(raw, range)};
}

Path straight_path(std::size_t steps, Vec2 dir, double len = 3.0) {
  Path p;
  p.positions.push_back({});
  for (std::size_t t = 1; t <= steps; ++t) p.positions.push_back(dir * (len * static_cast<double>(t)));
  return p;
}

}  // namespace

TEST_CASE("task unit vectors") {
  CHECK(task_unit_vector(Task::North) == Vec2{0, -1});
  CHECK(task_unit_vector(Task::East) == Vec2{-1, 0});
  CHECK(task_unit_vector(Task::South) == Vec2{0, 1});
  CHECK(task_unit_vector(Task::West) == Vec2{1, 0});
  CHECK(dot(task_unit_vector(Task::North), task_unit_vector(Task::South)) == -1.0);
  for (Task t : kTasks) {
    CHECK(norm(task_unit_vector(t)) == 1.0);
    CHECK(task_unit_vector(opposite(t)) == task_unit_vector(t) * -1.0);
  }
}

TEST_CASE("compute_stimuli") {
  auto z = compute_stimuli({0, 0}, {0, 0});
  for (double v : z) CHECK(v == 0.0);

  // delta = target - tracker = (2,-3)
  auto s = compute_stimuli({2, -3}, {0, 0});
  CHECK(s[index(Task::North)] == 3.0);
  CHECK(s[index(Task::East)] == -2.0);
  CHECK(s[index(Task::South)] == -3.0);
  CHECK(s[index(Task::West)] == 2.0);

  auto e = compute_stimuli({-1, 0}, {0, 0});
  CHECK(e[index(Task::East)] == 1.0);
  CHECK(e[index(Task::West)] == -1.0);
  CHECK(e[index(Task::North)] == 0.0);
  CHECK(e[index(Task::South)] == 0.0);

  Rng rng(7);
  std::uniform_real_distribution<double> u(-1e3, 1e3);
  for (int k = 0; k < 1000; ++k) {
    auto r = compute_stimuli({u(rng), u(rng)}, {u(rng), u(rng)});
    CHECK(r[0] == -r[2]);
    CHECK(r[1] == -r[3]);
  }
}

TEST_CASE("normalize_stimuli") {
  auto n = normalize_stimuli({20.0, -5.0, 5.0, 100.0}, 20.0);
  CHECK(n[0] == 1.0);
  CHECK(n[1] == 0.0);
  CHECK(n[2] == 0.25);
  CHECK(n[3] == 1.0);
  CHECK_THROWS_AS(normalize_stimuli({1, 1, 1, 1}, 0.0), ConfigError);
  CHECK_THROWS_AS(normalize_stimuli({1, 1, 1, 1}, -2.0), ConfigError);
}

TEST_CASE("decide_deterministic") {
  Rng rng(1);
  SUBCASE("no demand is idle even with zero thresholds") {
    CHECK_FALSE(decide_deterministic({0, 0, 0, 0}, stim({0, 0, 0, 0}), rng).has_value());
    CHECK_FALSE(decide_deterministic({0, 0, 0, 0}, stim({-0.0, 0, 0, -0.0}), rng).has_value());
  }
  SUBCASE("single candidate is always chosen") {
    for (int k = 0; k < 100; ++k) {
      auto a = decide_deterministic({0.1, 0.9, 0.1, 0.1}, stim({-4, 4, 4, -4}), rng);
      REQUIRE(a.has_value());
      CHECK(*a == Task::South);
    }
  }
  SUBCASE("threshold equality is eligible") {
    auto a = decide_deterministic({1, 1, 0.25, 1}, stim({-5, -5, 5, 5}), rng);
    REQUIRE(a.has_value());
    CHECK(*a == Task::South);
  }
  SUBCASE("two candidates split evenly") {
    const int n = 10000;
    int north = 0;
    for (int k = 0; k < n; ++k) {
      auto a = decide_deterministic({0.1, 0.1, 0.1, 0.1}, stim({5, 5, -5, -5}), rng);
      REQUIRE(a.has_value());
      if (*a == Task::North) ++north;
      else CHECK(*a == Task::East);
    }
    CHECK(std::abs(north - 5000) <= 300);
  }
}

TEST_CASE("eligibility is monotone in thresholds") {
  Rng rng(3);
  std::uniform_real_distribution<double> u(0, 1), off(-40, 40);
  for (int k = 0; k < 2000; ++k) {
    PerTask<double> lo, hi;
    for (std::size_t d = 0; d < 4; ++d) {
      lo[d] = u(rng);
      hi[d] = std::min(1.0, lo[d] + u(rng) * 0.3);
    }
    const auto s = sense({off(rng), off(rng)}, {0, 0}, 20.0);
    const auto ml = candidate_mask(lo, s);
    const auto mh = candidate_mask(hi, s);
    for (std::size_t d = 0; d < 4; ++d)
      if (mh[d]) CHECK(ml[d]);
  }
}

TEST_CASE("response_probability") {
  CHECK(response_probability(0.4, 0.4) == 0.5);
  for (double v : {1e-6, 0.01, 0.3, 0.77, 1.0}) CHECK(response_probability(v, v) == 0.5);
  CHECK(response_probability(0.3, 0.0) == 1.0);
  CHECK(response_probability(0.0, 0.0) == 0.0);
  CHECK(response_probability(0.0, 0.6) == 0.0);
  double prev = 0.0;
  for (double s = 0.05; s <= 1.0; s += 0.05) {
    const double p = response_probability(s, 0.5);
    CHECK(p > prev);
    prev = p;
  }
  prev = 1.0;
  for (double th = 0.05; th <= 1.0; th += 0.05) {
    const double p = response_probability(0.5, th);
    CHECK(p < prev);
    prev = p;
  }
}

TEST_CASE("decide_probabilistic frequencies") {
  Rng rng(11);
  const int n = 20000;
  // Only NORTH has demand; s = 0.4, theta = 0.4 -> candidate half of the time.
  int hits = 0;
  for (int k = 0; k < n; ++k)
    if (decide_probabilistic({0.4, 0.0, 0.0, 0.0}, stim({8, 0, -8, 0}), rng)) ++hits;
  CHECK(std::abs(hits - n / 2) <= oracle::three_sigma(n, 0.5));

  // Theta 0 with positive demand is certain; no demand never activates.
  for (int k = 0; k < 100; ++k) {
    auto a = decide_probabilistic({0.0, 0.0, 0.0, 0.0}, stim({0, 3, 0, -3}), rng);
    REQUIRE(a.has_value());
    CHECK(*a == Task::East);
    CHECK_FALSE(decide_probabilistic({0, 0, 0, 0}, stim({0, 0, 0, 0}), rng).has_value());
  }
}

TEST_CASE("update_dynamic") {
  AgentState a;
  a.thresholds = {0.5, 0.5, 0.5, 0.5};
  auto b = update_dynamic(a, Task::North, 0.1, 0.1);
  CHECK(b.thresholds[0] == doctest::Approx(0.4));
  for (std::size_t d = 1; d < 4; ++d) CHECK(b.thresholds[d] == doctest::Approx(0.6));

  a.thresholds = {0.05, 0.95, 0.5, 0.5};
  b = update_dynamic(a, Task::North, 0.1, 0.1);
  CHECK(b.thresholds[0] == 0.0);
  CHECK(b.thresholds[1] == 1.0);

  b = update_dynamic(a, std::nullopt, 0.1, 0.1);
  CHECK(b.thresholds == a.thresholds);
}

TEST_CASE("tracker_displacement") {
  auto all_east = tracker_displacement({0, 50, 0, 0}, 50, 2.0, 3.0);
  CHECK(all_east.x == doctest::Approx(-6.0));
  CHECK(all_east.y == doctest::Approx(0.0));
  auto cancel = tracker_displacement({10, 0, 10, 0}, 50, 2.0, 3.0);
  CHECK(cancel.x == 0.0);
  CHECK(cancel.y == 0.0);
  auto half = tracker_displacement({0, 25, 0, 0}, 50, 2.0, 3.0);
  CHECK(half.x == doctest::Approx(-3.0));
  CHECK_THROWS_AS(tracker_displacement({0, 0, 0, 0}, 0, 2.0, 3.0), ConfigError);
}

TEST_CASE("count_task_switches") {
  using A = Activation;
  const A N = Task::North, E = Task::East, I = std::nullopt;
  auto c = count_task_switches({{N, N, N, N}, {N, E, N}, {N, I, I, N}, {I, I}, {E, I, N, I, E}});
  CHECK(c == std::vector<std::size_t>{0, 2, 0, 0, 2});
}

TEST_CASE("run_simulation matches the hand-stepped oracle") {
  // Target: east for four steps, south for three, then north-west diagonally.
  std::vector<oracle::Point> pts{{0, 0}};
  auto step = [&](double dx, double dy) { pts.push_back({pts.back().x + dx, pts.back().y + dy}); };
  for (int k = 0; k < 4; ++k) step(-3, 0);
  for (int k = 0; k < 3; ++k) step(0, 3);
  for (int k = 0; k < 3; ++k) step(3 / std::sqrt(2.0), -3 / std::sqrt(2.0));
  REQUIRE(pts.size() == 11);

  const std::vector<std::array<double, 4>> theta{{0.0, 0.05, 0.02, 0.1}, {0.12, 0.0, 0.0, 0.03}};
  ThresholdMatrix genome({0.0, 0.05, 0.02, 0.1, 0.12, 0.0, 0.0, 0.03});

  Path path;
  for (auto p : pts) path.positions.push_back({p.x, p.y});

  for (std::uint64_t seed : {1ull, 42ull, 977ull}) {
    SimConfig cfg;
    cfg.swarm_size = 2;
    cfg.timesteps = 10;
    cfg.seed = seed;
    const auto lib = run_simulation(cfg, genome, path, true);
    const auto ref = oracle::hand_simulation(theta, pts, 20.0, 2.0, 3.0, seed);
    REQUIRE(lib.trace.size() == 11);
    for (std::size_t t = 1; t <= 10; ++t) {
      CHECK(lib.trace[t].tracker.x == doctest::Approx(ref.tracker[t - 1].x).epsilon(1e-12));
      CHECK(lib.trace[t].tracker.y == doctest::Approx(ref.tracker[t - 1].y).epsilon(1e-12));
    }
    CHECK(lib.avg_pos_diff == doctest::Approx(ref.avg_pos_diff).epsilon(1e-12));
    CHECK(lib.tracker_len == doctest::Approx(ref.tracker_len).epsilon(1e-12));
    CHECK(lib.avg_switches == ref.avg_switches);
    CHECK(lib.target_len == 30.0);
  }
}

TEST_CASE("run_simulation edge cases") {
  Rng rng(5);
  const Path circle = generate_path(Circle{}, 500, 3.0, rng);
  SimConfig cfg;

  SUBCASE("all-ones thresholds never move") {
    // Stimuli on a radius-10 circle never exceed range 20, so nobody saturates.
    const auto m = run_simulation(cfg, ThresholdMatrix(50, 1.0), circle);
    CHECK(m.tracker_len == 0.0);
    CHECK(m.target_len == doctest::Approx(1500.0));
    CHECK(m.path_len_diff == doctest::Approx(1500.0));
    CHECK(m.avg_switches == 0.0);
  }
  SUBCASE("dimension and config errors") {
    CHECK_THROWS_AS(run_simulation(cfg, ThresholdMatrix(49, 0.5), circle), DimensionError);
    SimConfig short_cfg = cfg;
    short_cfg.timesteps = 400;
    CHECK_THROWS_AS(run_simulation(short_cfg, ThresholdMatrix(50, 0.5), circle), DimensionError);
    SimConfig zero = cfg;
    zero.timesteps = 0;
    CHECK_THROWS_AS(run_simulation(zero, ThresholdMatrix(50, 0.5), Path{{{0, 0}}}), ConfigError);
    SimConfig bad = cfg;
    bad.policy = Dynamic{0.0, 0.5};
    CHECK_THROWS_AS(run_simulation(bad, ThresholdMatrix(50, 0.5), circle), ConfigError);
  }
  SUBCASE("bit-identical replay and invariants") {
    Rng g(9);
    const auto genome = random_thresholds(50, g);
    for (ActivationPolicy pol : {ActivationPolicy{Deterministic{}}, ActivationPolicy{Probabilistic{}},
                                 ActivationPolicy{Dynamic{0.05, 0.05}}}) {
      SimConfig c = cfg;
      c.policy = pol;
      c.seed = 1234;
      const auto a = run_simulation(c, genome, circle, true);
      const auto b = run_simulation(c, genome, circle, true);
      CHECK(a.avg_pos_diff == b.avg_pos_diff);
      CHECK(a.tracker_len == b.tracker_len);
      CHECK(a.avg_switches == b.avg_switches);
      CHECK(a.tracker_len <= 500 * 2.0 * 3.0 + 1e-9);
      CHECK(a.path_len_diff == std::abs(a.tracker_len - a.target_len));
      for (const AgentState& s : a.per_agent) {
        std::size_t acts = 0;
        for (std::size_t c2 : s.activation_counts) acts += c2;
        CHECK(acts <= 500);
        CHECK(s.switch_count <= acts);
        for (double th : s.thresholds) {
          CHECK(th >= 0.0);
          CHECK(th <= 1.0);
        }
      }
    }
  }
  SUBCASE("dynamic thresholds adapt") {
    SimConfig c = cfg;
    c.policy = Dynamic{};
    const auto genome = ThresholdMatrix(50, 0.5);
    const auto m = run_simulation(c, genome, straight_path(500, {-1, 0}));
    bool changed = false;
    for (std::size_t i = 0; i < 50; ++i)
      if (m.per_agent[i].thresholds != genome.row(i)) changed = true;
    CHECK(changed);
  }
  SUBCASE("activation reduces its own stimulus") {
    // Zero thresholds: everyone pushes east behind an east-moving target.
    const auto m = run_simulation(cfg, ThresholdMatrix(50, 0.0), straight_path(500, {-1, 0}), true);
    for (std::size_t t = 1; t < m.trace.size(); ++t) {
      const auto before = compute_stimuli(m.trace[t].target, m.trace[t - 1].tracker)[index(Task::East)];
      const auto after = compute_stimuli(m.trace[t].target, m.trace[t].tracker)[index(Task::East)];
      if (before > 0.0) CHECK(after < before);
    }
  }
}
