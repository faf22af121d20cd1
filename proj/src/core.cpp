#include "evothresh/core.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>

namespace evothresh {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

}  // namespace

std::uint64_t derive_seed(std::uint64_t base, std::initializer_list<std::uint64_t> tags) {
  std::uint64_t h = splitmix64(base);
  for (std::uint64_t tag : tags) h = splitmix64(h ^ splitmix64(tag + 0x632be59bd9b4e019ULL));
  return h;
}

double norm(Vec2 v) { return std::hypot(v.x, v.y); }
double distance(Vec2 a, Vec2 b) { return norm(a - b); }

std::string_view task_name(Task t) {
  switch (t) {
    case Task::North: return "NORTH";
    case Task::East: return "EAST";
    case Task::South: return "SOUTH";
    case Task::West: return "WEST";
  }
  return "?";
}

Task parse_task(std::string_view s) {
  std::string up(s);
  std::transform(up.begin(), up.end(), up.begin(), [](unsigned char c) { return std::toupper(c); });
  for (Task t : kTasks) {
    const auto name = task_name(t);
    if (up == name || (up.size() == 1 && up[0] == name[0])) return t;
  }
  throw ConfigError("unknown task '" + std::string(s) + "' (expected north, east, south or west)");
}

ThresholdMatrix::ThresholdMatrix(std::size_t agents, double fill)
    : values_(agents * kTaskCount, fill) {
  if (!(fill >= 0.0 && fill <= 1.0)) throw ConfigError("threshold fill value outside [0,1]");
}

ThresholdMatrix::ThresholdMatrix(std::vector<double> values) : values_(std::move(values)) {
  if (values_.size() % kTaskCount != 0)
    throw DimensionError("threshold count " + std::to_string(values_.size()) +
                         " is not a multiple of 4");
  for (double v : values_)
    if (!(v >= 0.0 && v <= 1.0)) throw ConfigError("threshold value outside [0,1]");
}

PerTask<double> ThresholdMatrix::row(std::size_t agent) const {
  PerTask<double> r{};
  std::copy_n(values_.begin() + static_cast<std::ptrdiff_t>(agent * kTaskCount), kTaskCount,
              r.begin());
  return r;
}

std::vector<double> ThresholdMatrix::column(Task t) const {
  std::vector<double> col(agents());
  for (std::size_t i = 0; i < col.size(); ++i) col[i] = (*this)(i, t);
  return col;
}

ThresholdMatrix random_thresholds(std::size_t agents, Rng& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<double> v(agents * kTaskCount);
  for (double& x : v) x = u(rng);
  return ThresholdMatrix(std::move(v));
}

double Path::length() const {
  double total = 0.0;
  for (std::size_t i = 1; i < positions.size(); ++i) total += distance(positions[i - 1], positions[i]);
  return total;
}

}  // namespace evothresh
