#include "evothresh/sim.hpp"

#include <algorithm>
#include <cmath>

namespace evothresh {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

Activation pick_candidate(const PerTask<bool>& mask, Rng& rng) {
  std::array<Task, kTaskCount> pool{};
  std::size_t k = 0;
  for (Task t : kTasks)
    if (mask[index(t)]) pool[k++] = t;
  if (k == 0) return std::nullopt;
  if (k == 1) return pool[0];
  std::uniform_int_distribution<std::size_t> pick(0, k - 1);
  return pool[pick(rng)];
}

bool delta_ok(double d) { return d > 0.0 && d < 1.0; }

}  // namespace

std::string policy_name(const ActivationPolicy& p) {
  return std::visit(overloaded{[](const Deterministic&) { return std::string("deterministic"); },
                               [](const Probabilistic&) { return std::string("probabilistic"); },
                               [](const Dynamic&) { return std::string("dynamic"); }},
                    p);
}

void SimConfig::validate() const {
  if (swarm_size == 0) throw ConfigError("swarm_size must be positive");
  if (timesteps == 0) throw ConfigError("timesteps must be positive");
  if (!(target_step_len > 0.0)) throw ConfigError("target_step_len must be positive");
  if (!(step_ratio > 0.0)) throw ConfigError("step_ratio must be positive");
  if (!(stimulus_range > 0.0)) throw ConfigError("stimulus range must be positive");
  if (const auto* d = std::get_if<Dynamic>(&policy)) {
    if (!delta_ok(d->learn_delta) || !delta_ok(d->forget_delta))
      throw ConfigError("dynamic threshold deltas must lie in (0,1)");
  }
}

PerTask<double> compute_stimuli(Vec2 target, Vec2 tracker) {
  const Vec2 offset = target - tracker;
  PerTask<double> raw{};
  for (Task t : kTasks) raw[index(t)] = dot(offset, task_unit_vector(t));
  return raw;
}

PerTask<double> normalize_stimuli(const PerTask<double>& raw, double stimulus_range) {
  if (!(stimulus_range > 0.0)) throw ConfigError("stimulus range must be positive");
  PerTask<double> out{};
  for (std::size_t d = 0; d < kTaskCount; ++d) out[d] = std::clamp(raw[d] / stimulus_range, 0.0, 1.0);
  return out;
}

StimulusVector sense(Vec2 target, Vec2 tracker, double stimulus_range) {
  StimulusVector s;
  s.raw = compute_stimuli(target, tracker);
  s.normalized = normalize_stimuli(s.raw, stimulus_range);
  return s;
}

PerTask<bool> candidate_mask(const PerTask<double>& thresholds, const StimulusVector& stimuli) {
  PerTask<bool> mask{};
  for (std::size_t d = 0; d < kTaskCount; ++d)
    mask[d] = stimuli.raw[d] > 0.0 && stimuli.normalized[d] >= thresholds[d];
  return mask;
}

Activation decide_deterministic(const PerTask<double>& thresholds, const StimulusVector& stimuli,
                                Rng& rng) {
  return pick_candidate(candidate_mask(thresholds, stimuli), rng);
}

double response_probability(double s, double theta) {
  if (s <= 0.0) return 0.0;
  const double s2 = s * s;
  return s2 / (s2 + theta * theta);
}

Activation decide_probabilistic(const PerTask<double>& thresholds, const StimulusVector& stimuli,
                                Rng& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  PerTask<bool> mask{};
  for (std::size_t d = 0; d < kTaskCount; ++d) {
    if (stimuli.raw[d] <= 0.0) continue;
    mask[d] = u(rng) < response_probability(stimuli.normalized[d], thresholds[d]);
  }
  return pick_candidate(mask, rng);
}

AgentState update_dynamic(AgentState agent, Activation performed, double learn_delta,
                          double forget_delta) {
  if (!performed) return agent;
  for (Task t : kTasks) {
    double& th = agent.thresholds[index(t)];
    th = (t == *performed) ? th - learn_delta : th + forget_delta;
    th = std::clamp(th, 0.0, 1.0);
  }
  return agent;
}

Vec2 tracker_displacement(const PerTask<std::size_t>& counts, std::size_t swarm_size,
                          double step_ratio, double target_step_len) {
  if (swarm_size == 0) throw ConfigError("swarm size must be positive");
  Vec2 push;
  for (Task t : kTasks) push += task_unit_vector(t) * static_cast<double>(counts[index(t)]);
  return push / static_cast<double>(swarm_size) * (step_ratio * target_step_len);
}

SimMetrics run_simulation(const SimConfig& config, const ThresholdMatrix& thresholds,
                          const Path& path, bool record_trace) {
  config.validate();
  if (thresholds.agents() != config.swarm_size)
    throw DimensionError("genome has " + std::to_string(thresholds.agents()) +
                         " agents, configuration expects " + std::to_string(config.swarm_size));
  if (path.steps() != config.timesteps)
    throw DimensionError("path has " + std::to_string(path.steps()) + " steps, configuration expects " +
                         std::to_string(config.timesteps));

  const std::size_t m = config.swarm_size;
  Rng rng(config.seed);

  std::vector<AgentState> agents(m);
  for (std::size_t i = 0; i < m; ++i) agents[i].thresholds = thresholds.row(i);

  const Dynamic* dynamic = std::get_if<Dynamic>(&config.policy);
  const bool probabilistic = std::holds_alternative<Probabilistic>(config.policy);

  SimMetrics out;
  if (record_trace) {
    out.trace.reserve(path.positions.size());
    out.trace.push_back({0, path.positions[0], path.positions[0]});
  }

  Vec2 tracker = path.positions[0];
  double distance_sum = 0.0;
  double tracker_len = 0.0;

  for (std::size_t t = 1; t <= config.timesteps; ++t) {
    const Vec2 target = path.positions[t];
    const StimulusVector stimuli = sense(target, tracker, config.stimulus_range);

    PerTask<std::size_t> counts{};
    for (AgentState& agent : agents) {
      const Activation act = probabilistic ? decide_probabilistic(agent.thresholds, stimuli, rng)
                                           : decide_deterministic(agent.thresholds, stimuli, rng);
      if (!act) continue;
      ++counts[index(*act)];
      ++agent.activation_counts[index(*act)];
      if (agent.last_task && *agent.last_task != *act) ++agent.switch_count;
      agent.last_task = act;
      if (dynamic) agent = update_dynamic(agent, act, dynamic->learn_delta, dynamic->forget_delta);
    }

    const Vec2 step = tracker_displacement(counts, m, config.step_ratio, config.target_step_len);
    tracker += step;
    tracker_len += norm(step);
    distance_sum += distance(target, tracker);
    if (record_trace) out.trace.push_back({t, target, tracker});
  }

  std::size_t switches = 0;
  for (const AgentState& a : agents) switches += a.switch_count;

  out.avg_pos_diff = distance_sum / static_cast<double>(config.timesteps);
  out.target_len = static_cast<double>(config.timesteps) * config.target_step_len;
  out.tracker_len = tracker_len;
  out.path_len_diff = std::abs(tracker_len - out.target_len);
  out.avg_switches = static_cast<double>(switches) / static_cast<double>(m);
  out.per_agent = std::move(agents);
  return out;
}

std::vector<std::size_t> count_task_switches(const std::vector<std::vector<Activation>>& log) {
  std::vector<std::size_t> out(log.size(), 0);
  for (std::size_t i = 0; i < log.size(); ++i) {
    Activation last;
    for (const Activation& a : log[i]) {
      if (!a) continue;
      if (last && *last != *a) ++out[i];
      last = a;
    }
  }
  return out;
}

}  // namespace evothresh
