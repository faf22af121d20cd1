#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace evothresh {

/// Invalid parameter or configuration value.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Mismatched sizes between cooperating objects (genome rows vs swarm size, etc.).
class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

using Rng = std::mt19937_64;

/// Mixes a base seed with a sequence of stream tags into an independent seed.
/// Used everywhere a job needs its own RNG stream, so results never depend on
/// the order in which parallel workers pick up jobs.
std::uint64_t derive_seed(std::uint64_t base, std::initializer_list<std::uint64_t> tags);

/// Named sub-streams fanned out from one process seed.
namespace stream {
inline constexpr std::uint64_t kGa = 0x4741;             // GA variation + init
inline constexpr std::uint64_t kEvaluation = 0x4556;     // per-individual evaluation
inline constexpr std::uint64_t kPath = 0x5041;           // path generation
inline constexpr std::uint64_t kTaskSelection = 0x5453;  // per-rep task selection
inline constexpr std::uint64_t kGenome = 0x474e;         // random / shuffled genomes
}  // namespace stream

struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  friend constexpr Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
  friend constexpr Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
  friend constexpr Vec2 operator*(Vec2 a, double k) { return {a.x * k, a.y * k}; }
  friend constexpr Vec2 operator*(double k, Vec2 a) { return {a.x * k, a.y * k}; }
  friend constexpr Vec2 operator/(Vec2 a, double k) { return {a.x / k, a.y / k}; }
  constexpr Vec2& operator+=(Vec2 o) {
    x += o.x;
    y += o.y;
    return *this;
  }
  friend constexpr bool operator==(Vec2, Vec2) = default;
};

constexpr double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
double norm(Vec2 v);
double distance(Vec2 a, Vec2 b);

/// The four push tasks. Enumerator order is the array index order everywhere.
enum class Task : std::uint8_t { North = 0, East = 1, South = 2, West = 3 };

inline constexpr std::size_t kTaskCount = 4;
inline constexpr std::array<Task, kTaskCount> kTasks{Task::North, Task::East, Task::South,
                                                     Task::West};

constexpr std::size_t index(Task t) { return static_cast<std::size_t>(t); }
constexpr Task opposite(Task t) { return kTasks[(index(t) + 2) % kTaskCount]; }

std::string_view task_name(Task t);
/// Accepts "north"/"N"/"NORTH" etc.
Task parse_task(std::string_view s);

/// Direction the tracker moves when an agent performs `t`. Chosen so that the
/// stimulus for `t` is the projection of (target - tracker) onto it:
/// N=(0,-1), E=(-1,0), S=(0,1), W=(1,0).
constexpr Vec2 task_unit_vector(Task t) {
  switch (t) {
    case Task::North: return {0.0, -1.0};
    case Task::East: return {-1.0, 0.0};
    case Task::South: return {0.0, 1.0};
    case Task::West: return {1.0, 0.0};
  }
  return {};
}

/// What an agent did in one timestep; nullopt means idle.
using Activation = std::optional<Task>;

template <typename T>
using PerTask = std::array<T, kTaskCount>;

/// Per-agent, per-task response thresholds in [0,1]; row-major by agent, task
/// order N,E,S,W. Doubles as the GA genome.
class ThresholdMatrix {
 public:
  ThresholdMatrix() = default;
  /// m agents, every threshold set to `fill`.
  explicit ThresholdMatrix(std::size_t agents, double fill = 0.0);
  /// Takes ownership of flat row-major values; throws ConfigError if any value
  /// is outside [0,1] and DimensionError if the size is not a multiple of 4.
  explicit ThresholdMatrix(std::vector<double> values);

  std::size_t agents() const { return values_.size() / kTaskCount; }
  std::size_t size() const { return values_.size(); }

  double operator()(std::size_t agent, Task t) const { return values_[agent * kTaskCount + index(t)]; }
  double& operator()(std::size_t agent, Task t) { return values_[agent * kTaskCount + index(t)]; }

  PerTask<double> row(std::size_t agent) const;

  std::span<const double> values() const { return values_; }
  std::span<double> values() { return values_; }

  /// Values of one task across all agents.
  std::vector<double> column(Task t) const;

  friend bool operator==(const ThresholdMatrix&, const ThresholdMatrix&) = default;

 private:
  std::vector<double> values_;
};

/// Thresholds drawn independently from U(0,1). Shared by GA initialization and
/// the uniform baseline.
ThresholdMatrix random_thresholds(std::size_t agents, Rng& rng);

/// Target positions; index 0 is the start, so steps() == positions.size() - 1.
struct Path {
  std::vector<Vec2> positions;

  std::size_t steps() const { return positions.empty() ? 0 : positions.size() - 1; }
  /// Sum of consecutive Euclidean distances.
  double length() const;
};

}  // namespace evothresh
