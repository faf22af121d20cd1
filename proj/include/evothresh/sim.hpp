#pragma once

#include <variant>

#include "evothresh/core.hpp"

namespace evothresh {

/// Eligible iff the hard comparison s >= theta holds (and there is demand).
struct Deterministic {};
/// Bernoulli eligibility with probability s^2 / (s^2 + theta^2).
struct Probabilistic {};
/// Deterministic eligibility; thresholds adapt with experience.
struct Dynamic {
  double learn_delta = 0.01;
  double forget_delta = 0.01;
};

using ActivationPolicy = std::variant<Deterministic, Probabilistic, Dynamic>;

std::string policy_name(const ActivationPolicy& p);

struct SimConfig {
  std::size_t swarm_size = 50;
  std::size_t timesteps = 500;
  double target_step_len = 3.0;
  double step_ratio = 2.0;
  double stimulus_range = 20.0;
  ActivationPolicy policy = Deterministic{};
  std::uint64_t seed = 0;

  /// Throws ConfigError on non-positive sizes or lengths, or deltas outside (0,1).
  void validate() const;
};

struct StimulusVector {
  PerTask<double> raw{};
  PerTask<double> normalized{};
};

PerTask<double> compute_stimuli(Vec2 target, Vec2 tracker);
PerTask<double> normalize_stimuli(const PerTask<double>& raw, double stimulus_range);
StimulusVector sense(Vec2 target, Vec2 tracker, double stimulus_range);

/// Tasks for which the agent is eligible under the deterministic rule:
/// raw > 0 and normalized >= threshold.
PerTask<bool> candidate_mask(const PerTask<double>& thresholds, const StimulusVector& stimuli);

/// RNG protocol (shared by the hand-stepped test oracle): a draw from `rng`
/// happens only when two or more tasks are candidates, as
/// uniform_int_distribution<size_t>(0, k-1) over candidates in task order.
Activation decide_deterministic(const PerTask<double>& thresholds, const StimulusVector& stimuli,
                                Rng& rng);

/// s^2 / (s^2 + theta^2), with 0 when s == 0.
double response_probability(double s, double theta);

/// RNG protocol: for every task with raw > 0, in task order, one
/// uniform_real_distribution(0,1) draw decides candidacy; then the same
/// tie-break as decide_deterministic.
Activation decide_probabilistic(const PerTask<double>& thresholds, const StimulusVector& stimuli,
                                Rng& rng);

/// Per-agent bookkeeping carried through a run.
struct AgentState {
  PerTask<double> thresholds{};
  Activation last_task;
  PerTask<std::size_t> activation_counts{};
  std::size_t switch_count = 0;
};

/// Threshold adaptation for the Dynamic policy. Idle leaves thresholds alone.
AgentState update_dynamic(AgentState agent, Activation performed, double learn_delta,
                          double forget_delta);

/// Mean push over the whole swarm, scaled so a unanimous push moves
/// step_ratio * target_step_len.
Vec2 tracker_displacement(const PerTask<std::size_t>& counts, std::size_t swarm_size,
                          double step_ratio, double target_step_len);

struct TracePoint {
  std::size_t t = 0;
  Vec2 target;
  Vec2 tracker;
};

struct SimMetrics {
  double avg_pos_diff = 0.0;
  double target_len = 0.0;
  double tracker_len = 0.0;
  double path_len_diff = 0.0;
  double avg_switches = 0.0;
  std::vector<AgentState> per_agent;
  std::vector<TracePoint> trace;  // empty unless requested
};

/// One run of the tracking problem. Per timestep: the target advances, agents
/// sense the offset, decide (and adapt, for Dynamic), the tracker moves by the
/// combined push, and the target-tracker distance is accumulated.
/// Target and tracker both start at path.positions[0].
SimMetrics run_simulation(const SimConfig& config, const ThresholdMatrix& thresholds,
                          const Path& path, bool record_trace = false);

/// Per-agent switch counts; idle entries neither count nor reset the last task.
std::vector<std::size_t> count_task_switches(const std::vector<std::vector<Activation>>& log);

}  // namespace evothresh
