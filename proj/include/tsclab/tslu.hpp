#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "tsclab/errors.hpp"
#include "tsclab/signal_plan.hpp"

namespace tsclab {

struct TsluConfig {
  double min_green = 5.0;
  double max_green = 60.0;
  double amber_time = 3.0;
  // allowed_transitions[from][to]; empty means every transition is allowed.
  std::vector<std::vector<std::uint8_t>> allowed_transitions;

  bool transition_allowed(int from, int to) const {
    if (allowed_transitions.empty()) return true;
    return allowed_transitions[static_cast<std::size_t>(from)][static_cast<std::size_t>(to)] != 0;
  }

  void validate(const SignalPlan& plan) const {
    if (!(min_green > 0.0) || min_green > max_green) {
      throw ConfigError("tslu.min_green: need 0 < min_green <= max_green");
    }
    if (amber_time < 0.0) throw ConfigError("tslu.amber_time: must be >= 0");
    if (!allowed_transitions.empty()) {
      const auto n = static_cast<std::size_t>(plan.num_phases());
      if (allowed_transitions.size() != n) {
        throw ConfigError("tslu.allowed_transitions: one row per phase required");
      }
      for (const auto& row : allowed_transitions) {
        if (row.size() != n) throw ConfigError("tslu.allowed_transitions: not square");
      }
    }
  }
};

enum class SignalColor { red, amber, green };

/// The safety automaton's full signal state. Phase requests pass through
/// tslu_request; time passes through tslu_tick. Every request is absorbed
/// safely, so there is no error path.
struct TsluState {
  int current_phase = 0;
  double elapsed_green = 0.0;  // time in the current phase since clearance completed
  int pending_target = -1;     // -1 when not in clearance
  double clearance_elapsed = 0.0;
  double clearance_total = 0.0;
  std::uint32_t green_mask = 0;
  std::uint32_t amber_mask = 0;
  double amber_remaining = 0.0;
  std::array<double, 32> gain_at{};  // per group: delay from clearance start until green

  bool in_clearance() const { return pending_target >= 0; }

  double clearance_remaining() const {
    return in_clearance() ? clearance_total - clearance_elapsed : 0.0;
  }

  bool is_green(int group) const { return (green_mask >> group) & 1u; }

  SignalColor signal_of(int group) const {
    if ((green_mask >> group) & 1u) return SignalColor::green;
    if ((amber_mask >> group) & 1u) return SignalColor::amber;
    return SignalColor::red;
  }
};

inline TsluState tslu_init(const SignalPlan& plan, int phase = 0) {
  TsluState s;
  s.current_phase = phase;
  s.green_mask = plan.phases[static_cast<std::size_t>(phase)].mask();
  return s;
}

namespace detail {

/// Lowest-id allowed successor distinct from the current phase; -1 if the
/// transition table permits nothing.
inline int next_allowed_phase(int current, const TsluConfig& cfg, const SignalPlan& plan) {
  for (int p = 0; p < plan.num_phases(); ++p) {
    if (p != current && cfg.transition_allowed(current, p)) return p;
  }
  return -1;
}

inline void begin_transition(TsluState& s, int target, const TsluConfig& cfg,
                             const SignalPlan& plan) {
  const std::uint32_t target_mask = plan.phases[static_cast<std::size_t>(target)].mask();
  const std::uint32_t losing = s.green_mask & ~target_mask;
  const std::uint32_t gaining = target_mask & ~s.green_mask;

  s.pending_target = target;
  s.clearance_elapsed = 0.0;
  s.clearance_total = 0.0;
  s.gain_at.fill(0.0);

  // Losing movements leave green now; vehicle groups show amber first.
  s.green_mask &= ~losing;
  std::uint32_t amber = 0;
  for (int g = 0; g < plan.num_groups(); ++g) {
    if (((losing >> g) & 1u) && !is_crosswalk_group(g)) amber |= (1u << g);
  }
  if (amber != 0 && cfg.amber_time > 0.0) {
    s.amber_mask = amber;
    s.amber_remaining = cfg.amber_time;
  }

  // Each gaining movement waits out the longest intergreen against the
  // conflicting movements that just lost green.
  for (int g = 0; g < plan.num_groups(); ++g) {
    if (!((gaining >> g) & 1u)) continue;
    s.amber_mask &= ~(1u << g);
    double delay = 0.0;
    for (int l = 0; l < plan.num_groups(); ++l) {
      if (((losing >> l) & 1u) && plan.conflicts(l, g)) {
        delay = std::max(delay, plan.intergreen_time(l, g));
      }
    }
    s.gain_at[static_cast<std::size_t>(g)] = delay;
    s.clearance_total = std::max(s.clearance_total, delay);
    if (delay <= 0.0) s.green_mask |= (1u << g);
  }

  if (s.clearance_total <= 0.0) {
    // Nothing to wait for: the phase flips immediately.
    s.current_phase = target;
    s.pending_target = -1;
    s.elapsed_green = 0.0;
    s.green_mask = target_mask;
  }
}

}  // namespace detail

/// Phase request filter. Cases: (a) re-request of the current phase is a
/// no-op; (b) requests before min_green are ignored; (c) an allowed request
/// after min_green starts the clearance schedule; (d) a disallowed request
/// keeps the current phase (max-green forcing lives in tslu_tick). Requests
/// during an ongoing clearance are absorbed.
inline TsluState tslu_request(TsluState s, int requested, const TsluConfig& cfg,
                              const SignalPlan& plan) {
  if (requested < 0 || requested >= plan.num_phases()) {
    throw ConfigError("tslu_request: phase id out of range");
  }
  if (s.in_clearance()) return s;
  if (requested == s.current_phase) return s;
  if (s.elapsed_green < cfg.min_green) return s;
  if (!cfg.transition_allowed(s.current_phase, requested)) return s;
  detail::begin_transition(s, requested, cfg, plan);
  return s;
}

/// Advances timers, completes pending transitions, and forces a move to the
/// next allowed phase once max_green is exhausted.
inline TsluState tslu_tick(TsluState s, double dt, const TsluConfig& cfg, const SignalPlan& plan) {
  if (!(dt > 0.0)) throw ConfigError("tslu_tick: dt must be > 0");

  if (s.amber_mask != 0) {
    s.amber_remaining -= dt;
    if (s.amber_remaining <= 1e-9) {
      s.amber_mask = 0;
      s.amber_remaining = 0.0;
    }
  }

  if (s.in_clearance()) {
    s.clearance_elapsed += dt;
    const std::uint32_t target_mask =
        plan.phases[static_cast<std::size_t>(s.pending_target)].mask();
    for (int g = 0; g < plan.num_groups(); ++g) {
      if (((target_mask >> g) & 1u) && !s.is_green(g) &&
          s.clearance_elapsed + 1e-9 >= s.gain_at[static_cast<std::size_t>(g)]) {
        s.green_mask |= (1u << g);
      }
    }
    if (s.clearance_elapsed + 1e-9 >= s.clearance_total) {
      const int target = s.pending_target;
      s.green_mask = plan.phases[static_cast<std::size_t>(target)].mask();
      s.current_phase = target;
      s.pending_target = -1;
      s.elapsed_green = s.clearance_elapsed - s.clearance_total;
      s.clearance_elapsed = 0.0;
      s.clearance_total = 0.0;
    }
    return s;
  }

  s.elapsed_green += dt;
  if (s.elapsed_green + 1e-9 >= cfg.max_green) {
    const int next = detail::next_allowed_phase(s.current_phase, cfg, plan);
    if (next >= 0) detail::begin_transition(s, next, cfg, plan);
  }
  return s;
}

}  // namespace tsclab
