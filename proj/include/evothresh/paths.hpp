#pragma once

#include <variant>

#include "evothresh/core.hpp"

namespace evothresh {

// Geometry is laid out in compass coordinates (east, north) and mapped to the
// world frame through task_unit_vector, so "east" always means the direction
// a push_EAST moves the tracker.

struct Circle {
  double radius = 10.0;
  /// Stop the path after this many revolutions (the path comes out shorter
  /// than the requested timesteps).
  std::optional<double> revolutions_cap;
};
struct Diamond {
  double edge_length = 50.0;
};
struct RandomWalk {
  double turn_sigma = 1.0;
};
struct SCurve {
  double amplitude = 10.0;
  double period = 40.0;
};
struct Square {
  double edge_length = 50.0;
};
struct ZigZag {
  double amplitude = 10.0;
  double period = 40.0;
};
/// ZigZag with the major direction of travel reversed to west.
struct ZigZagW {
  double amplitude = 10.0;
  double period = 40.0;
};

using PathSpec = std::variant<Circle, Diamond, RandomWalk, SCurve, Square, ZigZag, ZigZagW>;

/// "circle", "diamond", "random", "scurve", "square", "zigzag", "zigzag-w".
std::string path_name(const PathSpec& spec);
/// Default-parameterized spec for a path name; throws ConfigError if unknown.
PathSpec default_path(std::string_view name);
/// The six training paths, in the canonical order.
std::vector<std::string> training_path_names();
bool is_stochastic(const PathSpec& spec);

/// Throws ConfigError for non-positive geometry or a shape the step length
/// cannot resolve.
void validate_path(const PathSpec& spec, double step_len);

/// Target positions with every consecutive pair exactly step_len apart. Only
/// RandomWalk consumes `rng`.
Path generate_path(const PathSpec& spec, std::size_t timesteps, double step_len, Rng& rng);

}  // namespace evothresh
