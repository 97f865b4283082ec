#pragma once

#include <optional>
#include <vector>

#include "tsclab/car_following.hpp"
#include "tsclab/demand.hpp"
#include "tsclab/network.hpp"
#include "tsclab/tslu.hpp"

namespace tsclab {

struct AdvanceConfig {
  double waiting_speed_threshold = 0.1;  // m/s; below this, waiting_time accumulates
  double junction_clearance_time = 2.0;  // s spent traversing the junction after the stop line
  double permissive_base_gap = 6.0;      // s, accepted oncoming time gap before impatience scaling
};

/// Gap acceptance for permissive turns: impatient drivers accept shorter
/// oncoming gaps.
inline double accepted_gap(double base_gap, double impatience) {
  return base_gap * (1.0 - 0.5 * std::max(0.0, impatience));
}

struct AdvanceResult {
  std::vector<VehicleState> exited;
};

namespace detail {

/// True when the vehicle can no longer stop comfortably ahead of the halt
/// point; such vehicles are committed to crossing on amber onset.
inline bool committed_to_cross(const VehicleState& v, double halt_point) {
  const double dist = halt_point - v.position;
  if (dist <= 0.0) return true;
  return v.speed * v.speed / (2.0 * v.params.decel) > dist;
}

/// Oncoming through traffic arrival time at its stop line, for permissive
/// turn gap acceptance. Returns nullopt when the opposing lane is clear.
inline std::optional<double> oncoming_arrival_time(const Network& net, int opposing_lane,
                                                   const std::vector<VehicleState>& opposing) {
  const Lane& lane = net.lane(opposing_lane);
  for (const VehicleState& o : opposing) {
    if (o.crossed) continue;
    const double dist = lane.stop_line - o.position;
    if (dist < 0.0) return 0.0;
    return dist / std::max(o.speed, 0.5);
  }
  return std::nullopt;
}

}  // namespace detail

/// One integration sub-step over every lane, front to back. The leader seen
/// by a follower is the preceding vehicle already moved within this
/// sub-step, so the hard cap v <= gap/dt makes overlap impossible by
/// construction. Signals act as standing obstacles at
/// stop_line - jm_stopline_gap for movements not shown green, except for
/// vehicles committed at amber onset.
inline AdvanceResult advance_vehicles(const Network& net,
                                      std::vector<std::vector<VehicleState>>& lanes,
                                      const TsluState& signals, const CarFollowingSpec& cf,
                                      double t, double dt, RngStream& rng,
                                      const AdvanceConfig& acfg) {
  if (!(dt > 0.0)) throw ConfigError("advance_vehicles: dt must be > 0");
  AdvanceResult result;

  for (std::size_t lane_id = 0; lane_id < lanes.size(); ++lane_id) {
    const Lane& lane = net.lane(static_cast<int>(lane_id));
    auto& vehicles = lanes[lane_id];
    if (vehicles.empty()) continue;

    std::vector<VehicleState> kept;
    kept.reserve(vehicles.size());

    for (VehicleState& v : vehicles) {
      // Junction traversal complete: the vehicle leaves the model.
      if (v.crossed && t + 1e-9 >= v.cross_time + acfg.junction_clearance_time) {
        result.exited.push_back(v);
        continue;
      }

      const VehicleState* leader = kept.empty() ? nullptr : &kept.back();
      double bumper_gap = 0.0;
      if (leader) {
        bumper_gap = (leader->position - leader->params.length) - v.position;
        if (bumper_gap < 0.0) {
          throw SimulationError("advance_vehicles: negative gap behind vehicle " +
                                std::to_string(leader->id));
        }
      }

      const double desired = v.params.desired_speed(lane.speed_limit);
      double v_cand;
      switch (cf.model) {
        case CfModel::krauss: {
          std::optional<LeaderInfo> li;
          if (leader) li = LeaderInfo{leader->speed, std::max(0.0, bumper_gap - v.params.min_gap)};
          v_cand = krauss_target_speed(v, v.params, li, cf.sigma, lane.speed_limit, dt, rng);
          break;
        }
        case CfModel::idm: {
          std::optional<LeaderInfo> li;
          if (leader) li = LeaderInfo{leader->speed, std::max(1e-3, bumper_gap)};
          const double a = idm_accel(v, v.params, li, cf.delta, desired);
          v_cand = std::max(0.0, v.speed + a * dt);
          break;
        }
        case CfModel::wiedemann74: {
          std::optional<LeaderInfo> li;
          if (leader) li = LeaderInfo{leader->speed, std::max(1e-3, bumper_gap)};
          const double a = wiedemann74_accel(v, v.params, li, cf.w74, desired, v.w74_z);
          v_cand = std::max(0.0, std::min(v.speed + a * dt, desired));
          break;
        }
      }

      // Signal obstacle for vehicles still upstream of their stop line.
      if (!v.crossed) {
        const int group = vehicle_group(lane.approach, v.movement);
        const bool green = signals.signal_of(group) == SignalColor::green;
        const double halt_point = lane.stop_line - v.params.jm_stopline_gap;
        bool must_hold = false;
        if (!green) {
          must_hold = !detail::committed_to_cross(v, halt_point);
        } else if (v.movement == Turn::left) {
          // Permissive left: yield to oncoming through traffic that shares
          // the green, accepting gaps shortened by impatience.
          const int opp = (lane.approach + 2) % net.num_approaches();
          const int opp_group = vehicle_group(opp, Turn::through);
          const int opp_lane = net.lane_for_movement(opp, Turn::through);
          if (opp_lane >= 0 && signals.signal_of(opp_group) == SignalColor::green) {
            const auto arrival = detail::oncoming_arrival_time(
                net, opp_lane, lanes[static_cast<std::size_t>(opp_lane)]);
            if (arrival && *arrival < accepted_gap(acfg.permissive_base_gap, v.params.impatience)) {
              must_hold = !detail::committed_to_cross(v, halt_point);
            }
          }
        }
        if (must_hold) {
          const double ctrl_gap = std::max(0.0, halt_point - v.position);
          switch (cf.model) {
            case CfModel::krauss:
              v_cand = std::min(v_cand, krauss_safe_speed(0.0, ctrl_gap, v.params.decel,
                                                          v.params.tau));
              break;
            case CfModel::idm: {
              const LeaderInfo virt{0.0, std::max(1e-3, ctrl_gap + v.params.min_gap)};
              const double a = idm_accel(v, v.params, std::optional<LeaderInfo>(virt), cf.delta,
                                         desired);
              v_cand = std::min(v_cand, std::max(0.0, v.speed + a * dt));
              break;
            }
            case CfModel::wiedemann74: {
              const LeaderInfo virt{0.0, std::max(1e-3, ctrl_gap + cf.w74.ax)};
              const double a = wiedemann74_accel(v, v.params, std::optional<LeaderInfo>(virt),
                                                 cf.w74, desired, v.w74_z);
              v_cand = std::min(v_cand, std::max(0.0, v.speed + a * dt));
              break;
            }
          }
          // Never let a held vehicle reach the stop line itself.
          v_cand = std::min(v_cand, std::max(0.0, (lane.stop_line - v.position - 0.01) / dt));
        }
      }

      // Hard safety bound against the (already moved) leader: stay stoppable
      // and never consume more than the open gap in one sub-step.
      if (leader) {
        v_cand = std::min(v_cand, krauss_safe_speed(leader->speed, bumper_gap, v.params.decel, dt));
        v_cand = std::min(v_cand, bumper_gap / dt);
      }

      v.speed = std::max(0.0, v_cand);
      v.position += v.speed * dt;

      if (!v.crossed && v.position >= lane.stop_line) {
        v.crossed = true;
        v.cross_time = t;
      }

      if (v.speed < acfg.waiting_speed_threshold) {
        v.waiting_time += dt;
      } else {
        v.waiting_time = 0.0;
      }

      kept.push_back(v);
    }
    vehicles = std::move(kept);
  }
  return result;
}

}  // namespace tsclab
