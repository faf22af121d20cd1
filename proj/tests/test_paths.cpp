#include <doctest.h>

#include <cmath>
#include <numbers>

#include "evothresh/paths.hpp"

using namespace evothresh;

namespace {

// Compass (east, north) for a world point.
Vec2 compass(Vec2 w) { return {-w.x, -w.y}; }

double segment_distance(Vec2 p, Vec2 a, Vec2 b) {
  const Vec2 ab = b - a;
  const double t = std::clamp(dot(p - a, ab) / dot(ab, ab), 0.0, 1.0);
  return distance(p, a + ab * t);
}

double polygon_distance(Vec2 p, const std::vector<Vec2>& v) {
  double best = INFINITY;
  for (std::size_t k = 0; k < v.size(); ++k) best = std::min(best, segment_distance(p, v[k], v[(k + 1) % v.size()]));
  return best;
}

void check_step_lengths(const Path& p, double step) {
  for (std::size_t t = 1; t < p.positions.size(); ++t)
    REQUIRE(std::abs(distance(p.positions[t], p.positions[t - 1]) - step) <= 1e-6 * step);
}

std::vector<PathSpec> sample_specs(Rng& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<PathSpec> out;
  for (int k = 0; k < 8; ++k) {
    out.push_back(Circle{2.0 + 200.0 * u(rng), std::nullopt});
    out.push_back(Diamond{5.0 + 100.0 * u(rng)});
    out.push_back(RandomWalk{0.1 + 2.0 * u(rng)});
    out.push_back(SCurve{1.0 + 30.0 * u(rng), 8.0 + 150.0 * u(rng)});
    out.push_back(Square{5.0 + 100.0 * u(rng)});
    out.push_back(ZigZag{1.0 + 30.0 * u(rng), 8.0 + 150.0 * u(rng)});
    out.push_back(ZigZagW{1.0 + 30.0 * u(rng), 8.0 + 150.0 * u(rng)});
  }
  return out;
}

}  // namespace

TEST_CASE("constant step length for every variant") {
  Rng spec_rng(2024);
  for (const PathSpec& spec : sample_specs(spec_rng)) {
    CAPTURE(path_name(spec));
    for (double step : {0.5, 3.0, 4.5}) {
      Rng rng(17);
      const Path p = generate_path(spec, 500, step, rng);
      REQUIRE(p.steps() == 500);
      check_step_lengths(p, step);
      CHECK(std::abs(p.length() - 500 * step) <= 1e-6 * 500 * step);
    }
  }
}

TEST_CASE("default paths are 1500 long over 500 steps") {
  for (const auto& name : training_path_names()) {
    Rng rng(99);
    const Path p = generate_path(default_path(name), 500, 3.0, rng);
    CHECK(p.positions.front() == Vec2{0, 0});
    CHECK(std::abs(p.length() - 1500.0) <= 1e-6 * 1500.0);
  }
}

TEST_CASE("circle points are equidistant from the center") {
  for (double r : {5.0, 10.0, 50.0, 150.0}) {
    Rng rng(1);
    const Path p = generate_path(Circle{r, std::nullopt}, 500, 3.0, rng);
    const Vec2 center{0.0, -r};  // compass (0, r)
    for (Vec2 q : p.positions) CHECK(std::abs(distance(q, center) - r) <= 1e-6 * r);
  }
  SUBCASE("counterclockwise in compass coordinates") {
    Rng rng(1);
    const Path p = generate_path(Circle{}, 5, 3.0, rng);
    const Vec2 a = compass(p.positions[1]);
    CHECK(a.x > 0.0);  // first move heads east of the start
    CHECK(a.y > 0.0);
  }
}

TEST_CASE("revolutions cap truncates the circle") {
  Rng rng(1);
  const double r = 10.0;
  const double dphi = 2.0 * std::asin(3.0 / (2.0 * r));
  const Path p = generate_path(Circle{r, 1.0}, 500, 3.0, rng);
  CHECK(p.steps() == static_cast<std::size_t>(std::floor(2.0 * std::numbers::pi / dphi)));
  const Path half = generate_path(Circle{r, 0.5}, 500, 3.0, rng);
  CHECK(half.steps() == static_cast<std::size_t>(std::floor(std::numbers::pi / dphi)));
  const Path many = generate_path(Circle{r, 1000.0}, 500, 3.0, rng);
  CHECK(many.steps() == 500);
  check_step_lengths(p, 3.0);
}

TEST_CASE("square and diamond stay on their perimeter") {
  Rng rng(1);
  const double L = 50.0;
  std::vector<Vec2> sq{{0, 0}, {L, 0}, {L, L}, {0, L}};
  const double h = L / std::sqrt(2.0);
  std::vector<Vec2> di{{0, 0}, {h, -h}, {2 * h, 0}, {h, h}};
  const Path ps = generate_path(Square{L}, 500, 3.0, rng);
  const Path pd = generate_path(Diamond{L}, 500, 3.0, rng);
  for (Vec2 q : ps.positions) CHECK(polygon_distance(compass(q), sq) <= 1e-6);
  for (Vec2 q : pd.positions) CHECK(polygon_distance(compass(q), di) <= 1e-6);
  // first square edge heads east
  CHECK(compass(ps.positions[1]).x == doctest::Approx(3.0));
  CHECK(compass(ps.positions[1]).y == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("zigzag shape") {
  Rng rng(1);
  const double A = 10.0, P = 40.0;
  const Path z = generate_path(ZigZag{A, P}, 500, 3.0, rng);
  const Path w = generate_path(ZigZagW{A, P}, 500, 3.0, rng);
  REQUIRE(z.positions.size() == w.positions.size());

  SUBCASE("zigzag-w mirrors zigzag in x") {
    for (std::size_t t = 0; t < z.positions.size(); ++t) {
      CHECK(w.positions[t].x == -z.positions[t].x);
      CHECK(w.positions[t].y == z.positions[t].y);
    }
  }
  SUBCASE("monotone along the major direction") {
    for (std::size_t t = 1; t < z.positions.size(); ++t) {
      CHECK(compass(z.positions[t]).x >= compass(z.positions[t - 1]).x);
      CHECK(compass(w.positions[t]).x <= compass(w.positions[t - 1]).x);
    }
  }
  SUBCASE("points on the triangle wave") {
    for (Vec2 q : z.positions) {
      const Vec2 c = compass(q);
      const double ph = std::fmod(c.x, P) / P;
      const double y = ph < 0.25 ? 4 * A * ph : ph < 0.75 ? A * (2.0 - 4.0 * ph) : A * (4.0 * ph - 4.0);
      CHECK(std::abs(c.y - y) <= 1e-6);
      CHECK(std::abs(c.y) <= A + 1e-9);
    }
  }
  SUBCASE("one full cycle advances by the period") {
    std::vector<double> crossings;
    for (std::size_t t = 1; t < z.positions.size(); ++t) {
      const Vec2 a = compass(z.positions[t - 1]), b = compass(z.positions[t]);
      if ((a.y > 0 && b.y <= 0) || (a.y < 0 && b.y >= 0))
        crossings.push_back(a.x + (b.x - a.x) * a.y / (a.y - b.y));
    }
    REQUIRE(crossings.size() >= 4);
    CHECK(crossings[0] == doctest::Approx(P / 2));
    CHECK(crossings[2] - crossings[0] == doctest::Approx(P));
    CHECK(crossings[3] - crossings[1] == doctest::Approx(P));
  }
}

TEST_CASE("scurve lies on the sine") {
  for (double P : {10.0, 40.0, 100.0}) {
    Rng rng(1);
    const double A = 10.0;
    const Path s = generate_path(SCurve{A, P}, 500, 3.0, rng);
    for (Vec2 q : s.positions) {
      const Vec2 c = compass(q);
      CHECK(std::abs(c.y - A * std::sin(2.0 * std::numbers::pi * c.x / P)) <= 1e-6);
    }
    for (std::size_t t = 1; t < s.positions.size(); ++t)
      CHECK(compass(s.positions[t]).x > compass(s.positions[t - 1]).x);
  }
}

TEST_CASE("random walk is reproducible and seed dependent") {
  Rng a(5), b(5), c(6);
  const Path pa = generate_path(RandomWalk{}, 500, 3.0, a);
  const Path pb = generate_path(RandomWalk{}, 500, 3.0, b);
  const Path pc = generate_path(RandomWalk{}, 500, 3.0, c);
  CHECK(pa.positions == pb.positions);
  CHECK(pa.positions != pc.positions);
  CHECK(std::abs(pa.length() - 1500.0) <= 1e-6);
  CHECK(is_stochastic(RandomWalk{}));
  CHECK_FALSE(is_stochastic(Circle{}));
}

TEST_CASE("deterministic variants leave the rng alone") {
  for (const auto& name : {"circle", "diamond", "scurve", "square", "zigzag", "zigzag-w"}) {
    Rng used(3), fresh(3);
    generate_path(default_path(name), 50, 3.0, used);
    CHECK(used() == fresh());
  }
}

TEST_CASE("names round-trip") {
  for (const auto& name : training_path_names()) CHECK(path_name(default_path(name)) == name);
  CHECK(path_name(default_path("zigzag-w")) == "zigzag-w");
  CHECK(training_path_names().size() == 6);
  CHECK_THROWS_AS(default_path("spiral"), ConfigError);
}

TEST_CASE("invalid geometry") {
  Rng rng(1);
  CHECK_THROWS_AS(validate_path(Circle{0.0, std::nullopt}, 3.0), ConfigError);
  CHECK_THROWS_AS(validate_path(Circle{1.0, std::nullopt}, 3.0), ConfigError);
  CHECK_THROWS_AS(validate_path(Circle{10.0, -1.0}, 3.0), ConfigError);
  CHECK_THROWS_AS(validate_path(Square{-5}, 3.0), ConfigError);
  CHECK_THROWS_AS(validate_path(Square{2}, 3.0), ConfigError);
  CHECK_THROWS_AS(validate_path(Diamond{0}, 3.0), ConfigError);
  CHECK_THROWS_AS(validate_path(RandomWalk{0.0}, 3.0), ConfigError);
  CHECK_THROWS_AS(validate_path(ZigZag{10, 0}, 3.0), ConfigError);
  CHECK_THROWS_AS(validate_path(ZigZag{0, 40}, 3.0), ConfigError);
  CHECK_THROWS_AS(validate_path(SCurve{10, 2.0}, 3.0), ConfigError);
  CHECK_THROWS_AS(validate_path(ZigZagW{10, 3.0}, 3.0), ConfigError);
  CHECK_THROWS_AS(generate_path(Circle{}, 0, 3.0, rng), ConfigError);
  CHECK_THROWS_AS(generate_path(Circle{}, 10, 0.0, rng), ConfigError);
  CHECK_NOTHROW(validate_path(ZigZag{10, 40}, 3.0));
}
