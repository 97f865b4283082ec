#pragma once

#include <array>
#include <string>

#include "tsclab/network.hpp"

namespace tsclab {

enum class VehicleClass { car = 0, truck = 1, bus = 2, motorcycle = 3, truck_trailer = 4 };

constexpr int kNumVehicleClasses = 5;

inline const char* vehicle_class_name(VehicleClass c) {
  switch (c) {
    case VehicleClass::car: return "car";
    case VehicleClass::truck: return "truck";
    case VehicleClass::bus: return "bus";
    case VehicleClass::motorcycle: return "motorcycle";
    case VehicleClass::truck_trailer: return "truck_trailer";
  }
  return "?";
}

/// Multipliers applied to the car-class draw for the other classes.
/// These live in config, not in the randomization tables.
struct ClassScaling {
  std::array<double, kNumVehicleClasses> length{1.0, 2.4, 2.5, 0.45, 3.6};
  std::array<double, kNumVehicleClasses> accel{1.0, 0.5, 0.5, 1.0, 0.5};
};

struct VehicleParams {
  double accel = 2.5;            // m/s^2
  double decel = 4.7;            // m/s^2, positive magnitude
  double length = 5.0;           // m
  double min_gap = 2.9;          // m
  double tau = 1.13;             // s
  double speed_factor = 1.0;     // per-vehicle multiplier on the speed limit
  double jm_stopline_gap = 0.94; // m
  double impatience = 0.0;       // in [-1, 1]
  VehicleClass vehicle_class = VehicleClass::car;

  double desired_speed(double speed_limit) const { return speed_limit * speed_factor; }
};

struct VehicleState {
  int id = 0;
  int lane = 0;
  double position = 0.0;      // m, front bumper from lane start
  double speed = 0.0;         // m/s
  double waiting_time = 0.0;  // s continuously below the waiting threshold
  Turn movement = Turn::through;
  double spawn_time = 0.0;    // s

  VehicleParams params;
  double w74_z = 0.5;         // per-vehicle Wiedemann draw in [0, 1]

  // Set once the front bumper passes the stop line on green. Crossed
  // vehicles traverse the junction and are exempt from the lane-length
  // position bound until they exit.
  bool crossed = false;
  double cross_time = 0.0;
};

}  // namespace tsclab
