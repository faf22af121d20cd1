#include "evothresh/paths.hpp"

#include <cmath>
#include <functional>
#include <numbers>

namespace evothresh {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// (east, north) -> world.
Vec2 to_world(Vec2 compass) {
  return task_unit_vector(Task::East) * compass.x + task_unit_vector(Task::North) * compass.y;
}

/// Walks an (unbounded) polyline given by its vertex function, placing each
/// new point at the first position ahead whose straight-line distance from
/// the previous point is exactly `step_len`. Corners are cut by chords, so
/// every point stays on the polyline and every step has the same length.
std::vector<Vec2> walk_polyline(const std::function<Vec2(std::size_t)>& vertex,
                                std::size_t timesteps, double step_len) {
  std::vector<Vec2> pts;
  pts.reserve(timesteps + 1);
  Vec2 p = vertex(0);
  std::size_t seg = 0;
  pts.push_back(p);
  for (std::size_t k = 0; k < timesteps; ++k) {
    Vec2 a = p;
    std::size_t s = seg;
    while (true) {
      const Vec2 b = vertex(s + 1);
      const Vec2 d = b - a;
      const Vec2 f = a - p;
      const double qa = dot(d, d);
      const double qb = 2.0 * dot(f, d);
      const double qc = dot(f, f) - step_len * step_len;
      const double t = (-qb + std::sqrt(qb * qb - 4.0 * qa * qc)) / (2.0 * qa);
      if (t <= 1.0) {
        p = a + d * t;
        seg = s;
        break;
      }
      ++s;
      a = b;
    }
    pts.push_back(p);
  }
  return pts;
}

std::vector<Vec2> closed_polyline(std::vector<Vec2> vertices, std::size_t timesteps,
                                  double step_len) {
  const std::size_t n = vertices.size();
  return walk_polyline([&](std::size_t k) { return vertices[k % n]; }, timesteps, step_len);
}

std::vector<Vec2> zigzag_compass(double amplitude, double period, std::size_t timesteps,
                                 double step_len) {
  auto vertex = [=](std::size_t k) -> Vec2 {
    if (k == 0) return {0.0, 0.0};
    const double x = period / 4.0 + static_cast<double>(k - 1) * period / 2.0;
    return {x, (k % 2 == 1) ? amplitude : -amplitude};
  };
  return walk_polyline(vertex, timesteps, step_len);
}

std::vector<Vec2> scurve_compass(double amplitude, double period, std::size_t timesteps,
                                 double step_len) {
  auto at = [=](double x) { return Vec2{x, amplitude * std::sin(kTwoPi * x / period)}; };
  std::vector<Vec2> pts;
  pts.reserve(timesteps + 1);
  double x = 0.0;
  pts.push_back(at(x));
  constexpr int kScan = 256;
  for (std::size_t k = 0; k < timesteps; ++k) {
    const Vec2 from = at(x);
    auto chord = [&](double dx) { return distance(at(x + dx), from); };
    // First crossing of the chord length: chord(dx) >= dx, so one exists in (0, step_len].
    const double h = step_len / kScan;
    double lo = 0.0;
    double hi = step_len;
    for (int i = 1; i <= kScan; ++i) {
      if (chord(h * i) >= step_len) {
        lo = h * (i - 1);
        hi = h * i;
        break;
      }
    }
    for (int it = 0; it < 200; ++it) {
      const double mid = 0.5 * (lo + hi);
      if (mid <= lo || mid >= hi) break;
      (chord(mid) < step_len ? lo : hi) = mid;
    }
    x += (std::abs(chord(lo) - step_len) < std::abs(chord(hi) - step_len)) ? lo : hi;
    pts.push_back(at(x));
  }
  return pts;
}

std::vector<Vec2> circle_compass(const Circle& c, std::size_t timesteps, double step_len) {
  const double dphi = 2.0 * std::asin(step_len / (2.0 * c.radius));
  std::size_t steps = timesteps;
  if (c.revolutions_cap) {
    const auto capped = static_cast<std::size_t>(std::floor(*c.revolutions_cap * kTwoPi / dphi + 1e-9));
    if (capped == 0) throw ConfigError("circle revolutions cap admits no complete step");
    steps = std::min(steps, capped);
  }
  const Vec2 center{0.0, c.radius};
  std::vector<Vec2> pts;
  pts.reserve(steps + 1);
  pts.push_back({0.0, 0.0});
  for (std::size_t k = 1; k <= steps; ++k) {
    const double phi = -std::numbers::pi / 2.0 + dphi * static_cast<double>(k);
    pts.push_back(center + Vec2{c.radius * std::cos(phi), c.radius * std::sin(phi)});
  }
  return pts;
}

void require_positive(double v, const char* what) {
  if (!(v > 0.0) || !std::isfinite(v)) throw ConfigError(std::string(what) + " must be positive");
}

void validate_wave(double amplitude, double period, double step_len, const char* name) {
  require_positive(amplitude, "amplitude");
  require_positive(period, "period");
  if (period <= step_len)
    throw ConfigError(std::string(name) + " period must exceed the step length");
}

}  // namespace

std::string path_name(const PathSpec& spec) {
  return std::visit(overloaded{[](const Circle&) { return "circle"; },
                               [](const Diamond&) { return "diamond"; },
                               [](const RandomWalk&) { return "random"; },
                               [](const SCurve&) { return "scurve"; },
                               [](const Square&) { return "square"; },
                               [](const ZigZag&) { return "zigzag"; },
                               [](const ZigZagW&) { return "zigzag-w"; }},
                    spec);
}

PathSpec default_path(std::string_view name) {
  if (name == "circle") return Circle{};
  if (name == "diamond") return Diamond{};
  if (name == "random") return RandomWalk{};
  if (name == "scurve") return SCurve{};
  if (name == "square") return Square{};
  if (name == "zigzag") return ZigZag{};
  if (name == "zigzag-w") return ZigZagW{};
  throw ConfigError("unknown path '" + std::string(name) + "'");
}

std::vector<std::string> training_path_names() {
  return {"circle", "diamond", "random", "scurve", "square", "zigzag"};
}

bool is_stochastic(const PathSpec& spec) { return std::holds_alternative<RandomWalk>(spec); }

void validate_path(const PathSpec& spec, double step_len) {
  require_positive(step_len, "step length");
  std::visit(overloaded{
                 [&](const Circle& c) {
                   require_positive(c.radius, "radius");
                   if (step_len > 2.0 * c.radius)
                     throw ConfigError("circle diameter is shorter than one step");
                   if (c.revolutions_cap) require_positive(*c.revolutions_cap, "revolutions cap");
                 },
                 [&](const Diamond& d) {
                   require_positive(d.edge_length, "edge length");
                   if (step_len > d.edge_length) throw ConfigError("diamond edge is shorter than one step");
                 },
                 [&](const RandomWalk& r) { require_positive(r.turn_sigma, "turn sigma"); },
                 [&](const SCurve& s) { validate_wave(s.amplitude, s.period, step_len, "scurve"); },
                 [&](const Square& s) {
                   require_positive(s.edge_length, "edge length");
                   if (step_len > s.edge_length) throw ConfigError("square edge is shorter than one step");
                 },
                 [&](const ZigZag& z) { validate_wave(z.amplitude, z.period, step_len, "zigzag"); },
                 [&](const ZigZagW& z) { validate_wave(z.amplitude, z.period, step_len, "zigzag-w"); },
             },
             spec);
}

Path generate_path(const PathSpec& spec, std::size_t timesteps, double step_len, Rng& rng) {
  if (timesteps == 0) throw ConfigError("timesteps must be positive");
  validate_path(spec, step_len);

  std::vector<Vec2> compass = std::visit(
      overloaded{
          [&](const Circle& c) { return circle_compass(c, timesteps, step_len); },
          [&](const Diamond& d) {
            const double h = d.edge_length / std::numbers::sqrt2;
            return closed_polyline({{0.0, 0.0}, {h, -h}, {2.0 * h, 0.0}, {h, h}}, timesteps, step_len);
          },
          [&](const RandomWalk& r) {
            std::uniform_real_distribution<double> initial(0.0, kTwoPi);
            std::normal_distribution<double> turn(0.0, r.turn_sigma);
            std::vector<Vec2> pts;
            pts.reserve(timesteps + 1);
            Vec2 p{0.0, 0.0};
            double heading = initial(rng);
            pts.push_back(p);
            for (std::size_t k = 0; k < timesteps; ++k) {
              heading += turn(rng);
              p += Vec2{std::cos(heading), std::sin(heading)} * step_len;
              pts.push_back(p);
            }
            return pts;
          },
          [&](const SCurve& s) { return scurve_compass(s.amplitude, s.period, timesteps, step_len); },
          [&](const Square& s) {
            const double e = s.edge_length;
            return closed_polyline({{0.0, 0.0}, {e, 0.0}, {e, e}, {0.0, e}}, timesteps, step_len);
          },
          [&](const ZigZag& z) { return zigzag_compass(z.amplitude, z.period, timesteps, step_len); },
          [&](const ZigZagW& z) {
            auto pts = zigzag_compass(z.amplitude, z.period, timesteps, step_len);
            for (Vec2& p : pts) p.x = -p.x;
            return pts;
          },
      },
      spec);

  Path path;
  path.positions.reserve(compass.size());
  for (Vec2 c : compass) path.positions.push_back(to_world(c));
  return path;
}

}  // namespace evothresh
