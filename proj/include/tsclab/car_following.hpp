#pragma once

#include <cmath>
#include <optional>
#include <string>

#include "tsclab/errors.hpp"
#include "tsclab/rng.hpp"
#include "tsclab/vehicle.hpp"

namespace tsclab {

enum class CfModel { krauss = 0, idm = 1, wiedemann74 = 2 };

inline const char* cf_model_name(CfModel m) {
  switch (m) {
    case CfModel::krauss: return "krauss";
    case CfModel::idm: return "idm";
    case CfModel::wiedemann74: return "wiedemann74";
  }
  return "?";
}

struct Wiedemann74Spec {
  double ax = 2.0;       // m, standstill distance
  double bx_add = 2.0;
  double bx_mult = 3.0;
};

struct CarFollowingSpec {
  CfModel model = CfModel::krauss;
  double sigma = 0.0;  // Krauss driver imperfection, in [0, 1]
  double delta = 4.0;  // IDM acceleration exponent
  Wiedemann74Spec w74;
};

/// Leader as seen by a follower. The gap convention is per model:
/// Krauss takes the control gap (bumper gap minus the follower's min_gap),
/// IDM and Wiedemann-74 take the raw bumper-to-bumper gap.
struct LeaderInfo {
  double speed = 0.0;  // m/s
  double gap = 0.0;    // m
};

/// Largest speed from which the follower can still come to a stop behind a
/// leader that brakes at rate `decel`, assuming one reaction interval `tau`.
/// v * tau + v^2/(2b) <= gap + v_leader^2/(2b).
inline double krauss_safe_speed(double leader_speed, double gap, double decel, double tau) {
  const double bt = decel * tau;
  const double arg = bt * bt + leader_speed * leader_speed + 2.0 * decel * gap;
  if (arg <= 0.0) return 0.0;
  return std::max(0.0, -bt + std::sqrt(arg));
}

/// Krauss speed update: free acceleration bounded by the safe speed and the
/// desired speed, then a random dawdling deduction scaled by sigma.
inline double krauss_target_speed(const VehicleState& follower, const VehicleParams& params,
                                  const std::optional<LeaderInfo>& leader, double sigma,
                                  double speed_limit, double dt, RngStream& rng) {
  if (leader && leader->gap < 0.0) {
    throw SimulationError("krauss_target_speed: negative gap (vehicle " +
                          std::to_string(follower.id) + ")");
  }
  double v_safe = std::numeric_limits<double>::infinity();
  if (leader) {
    v_safe = krauss_safe_speed(leader->speed, leader->gap, params.decel, params.tau);
  }
  const double v_free = follower.speed + params.accel * dt;
  const double v_des = params.desired_speed(speed_limit);
  double v = std::min(v_safe, std::min(v_free, v_des));
  if (sigma > 0.0) {
    v -= sigma * params.accel * dt * rng.uniform01();
  }
  return std::max(0.0, v);
}

/// Intelligent Driver Model acceleration. `gap` is the net bumper gap s;
/// the standstill term s0 is the follower's min_gap and the headway is tau.
inline double idm_accel(const VehicleState& follower, const VehicleParams& params,
                        const std::optional<LeaderInfo>& leader, double delta,
                        double desired_speed) {
  const double v = follower.speed;
  const double v0 = std::max(desired_speed, 1e-6);
  double interaction = 0.0;
  if (leader) {
    if (leader->gap <= 0.0) {
      throw SimulationError("idm_accel: nonpositive gap (vehicle " +
                            std::to_string(follower.id) + ")");
    }
    const double dv = v - leader->speed;
    const double s_star = params.min_gap +
                          std::max(0.0, v * params.tau +
                                            v * dv / (2.0 * std::sqrt(params.accel * params.decel)));
    interaction = (s_star / leader->gap) * (s_star / leader->gap);
  }
  return params.accel * (1.0 - std::pow(v / v0, delta) - interaction);
}

/// Wiedemann-74 psycho-physical regimes {free driving, approaching,
/// following, emergency braking}. Desired following distance
/// d = ax + (bx_add + bx_mult * z) * sqrt(v) with a per-vehicle z in [0, 1]
/// and v the slower of follower and leader. `gap` is the raw bumper gap.
/// The emergency regime brakes hard enough to stop with min_gap to spare.
inline double wiedemann74_accel(const VehicleState& follower, const VehicleParams& params,
                                const std::optional<LeaderInfo>& leader,
                                const Wiedemann74Spec& spec, double desired_speed, double z) {
  const double v = follower.speed;
  const double v0 = std::max(desired_speed, 1e-6);
  const double free_accel = params.accel * std::max(0.0, 1.0 - v / v0);
  if (!leader) return free_accel;
  if (leader->gap <= 0.0) {
    throw SimulationError("wiedemann74_accel: nonpositive gap (vehicle " +
                          std::to_string(follower.id) + ")");
  }
  const double gap = leader->gap;
  const double dv = v - leader->speed;  // closing speed, > 0 when approaching
  const double bx = spec.bx_add + spec.bx_mult * z;
  const double d = spec.ax + bx * std::sqrt(std::max(0.0, std::min(v, leader->speed)));

  // Emergency braking: inside the standstill distance, or stopping in the
  // available gap already demands more than the comfortable deceleration.
  const double margin = std::max(gap - params.min_gap, 1e-3);
  const double stop_decel = (dv > 0.0) ? (dv * dv) / (2.0 * margin) : 0.0;
  if (gap < spec.ax || stop_decel >= params.decel) {
    return -std::max(params.decel, stop_decel);
  }

  // Approaching: closing in on the desired distance; shed the speed
  // difference so it reaches zero as the gap reaches d.
  const double perception = d + (dv > 0.0 ? dv * dv / params.decel : 0.0);
  if (dv > 0.0 && gap < perception) {
    const double a = -dv * dv / (2.0 * std::max(gap - d, 0.5));
    return std::max(a, -params.decel);
  }

  // Following corridor: drift around the desired distance.
  if (gap < 2.0 * d) {
    const double a = 0.4 * (gap - d) - 0.8 * dv;
    return std::max(-params.decel, std::min(a, free_accel));
  }

  return free_accel;
}

}  // namespace tsclab
