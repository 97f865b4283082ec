#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "tsclab/errors.hpp"
#include "tsclab/network.hpp"

namespace tsclab {

/// Signal groups: 12 vehicle movements (approach-major, then turn) followed
/// by one group per crosswalk.
constexpr int kNumVehicleGroups = 12;

inline int vehicle_group(int approach, Turn turn) {
  return approach * kNumTurns + static_cast<int>(turn);
}

inline int crosswalk_group(int crosswalk) { return kNumVehicleGroups + crosswalk; }

inline bool is_crosswalk_group(int group) { return group >= kNumVehicleGroups; }

inline int group_approach(int group) { return group / kNumTurns; }
inline Turn group_turn(int group) { return static_cast<Turn>(group % kNumTurns); }

inline std::string group_name(int group) {
  static const char* approach_names[] = {"N", "E", "S", "W"};
  if (is_crosswalk_group(group)) {
    return std::string("cw_") + approach_names[group - kNumVehicleGroups];
  }
  return std::string(approach_names[group_approach(group)]) + "_" + turn_name(group_turn(group));
}

struct Phase {
  int id = 0;
  std::vector<int> green_groups;

  std::uint32_t mask() const {
    std::uint32_t m = 0;
    for (int g : green_groups) m |= (1u << g);
    return m;
  }
};

struct SignalPlan {
  std::vector<Phase> phases;
  std::vector<std::vector<std::uint8_t>> conflict;   // symmetric, zero diagonal
  std::vector<std::vector<double>> intergreen;       // [losing][gaining] clearance, s

  int num_groups() const { return static_cast<int>(conflict.size()); }
  int num_phases() const { return static_cast<int>(phases.size()); }

  bool conflicts(int a, int b) const {
    return conflict[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] != 0;
  }

  double intergreen_time(int losing, int gaining) const {
    return intergreen[static_cast<std::size_t>(losing)][static_cast<std::size_t>(gaining)];
  }

  void validate() const {
    const int n = num_groups();
    if (n == 0) throw ConfigError("signal_plan.conflict: empty matrix");
    for (int i = 0; i < n; ++i) {
      if (static_cast<int>(conflict[static_cast<std::size_t>(i)].size()) != n) {
        throw ConfigError("signal_plan.conflict: not square");
      }
      if (conflict[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)] != 0) {
        throw ConfigError("signal_plan.conflict: nonzero diagonal at " + std::to_string(i));
      }
      for (int j = 0; j < n; ++j) {
        if (conflicts(i, j) != conflicts(j, i)) {
          throw ConfigError("signal_plan.conflict: asymmetric at (" + std::to_string(i) + "," +
                            std::to_string(j) + ")");
        }
      }
    }
    if (static_cast<int>(intergreen.size()) != n) {
      throw ConfigError("signal_plan.intergreen: wrong size");
    }
    for (int i = 0; i < n; ++i) {
      if (static_cast<int>(intergreen[static_cast<std::size_t>(i)].size()) != n) {
        throw ConfigError("signal_plan.intergreen: not square");
      }
      for (int j = 0; j < n; ++j) {
        if (intergreen[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] < 0.0) {
          throw ConfigError("signal_plan.intergreen: negative entry");
        }
      }
    }
    for (std::size_t p = 0; p < phases.size(); ++p) {
      if (phases[p].id != static_cast<int>(p)) {
        throw ConfigError("signal_plan.phases[" + std::to_string(p) + "].id: must equal index");
      }
      const auto& groups = phases[p].green_groups;
      for (int g : groups) {
        if (g < 0 || g >= n) {
          throw ConfigError("signal_plan.phases[" + std::to_string(p) + "]: group out of range");
        }
      }
      for (std::size_t i = 0; i < groups.size(); ++i) {
        for (std::size_t j = i + 1; j < groups.size(); ++j) {
          if (conflicts(groups[i], groups[j])) {
            throw ConfigError("signal_plan.phases[" + std::to_string(p) +
                              "]: conflicting movements " + group_name(groups[i]) + " and " +
                              group_name(groups[j]));
          }
        }
      }
    }
  }
};

/// Default conflict rules for the 4-arm layout. Same-approach movements
/// never conflict; through and left flows conflict across approaches except
/// for the opposing pair of the same kind; right turns are merge-only and
/// treated as partially conflicting, i.e. phase-compatible. A crosswalk
/// spans the inbound lanes of its arm and conflicts exactly with the
/// movements entering over it.
inline std::vector<std::vector<std::uint8_t>> default_conflict_matrix() {
  const int n = kNumVehicleGroups + 4;
  std::vector<std::vector<std::uint8_t>> m(static_cast<std::size_t>(n),
                                           std::vector<std::uint8_t>(static_cast<std::size_t>(n), 0));
  auto set = [&m](int a, int b) {
    m[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] = 1;
    m[static_cast<std::size_t>(b)][static_cast<std::size_t>(a)] = 1;
  };
  for (int a = 0; a < 4; ++a) {
    for (int b = a + 1; b < 4; ++b) {
      const bool opposite = (b - a) == 2;
      // through vs through, left vs left: conflict unless opposing
      if (!opposite) {
        set(vehicle_group(a, Turn::through), vehicle_group(b, Turn::through));
        set(vehicle_group(a, Turn::left), vehicle_group(b, Turn::left));
      }
      // through vs left always conflicts across approaches
      set(vehicle_group(a, Turn::through), vehicle_group(b, Turn::left));
      set(vehicle_group(a, Turn::left), vehicle_group(b, Turn::through));
    }
  }
  for (int c = 0; c < 4; ++c) {
    for (int t = 0; t < kNumTurns; ++t) {
      set(crosswalk_group(c), vehicle_group(c, static_cast<Turn>(t)));
    }
  }
  return m;
}

inline std::vector<std::vector<double>> default_intergreen_matrix(double veh_to_veh = 5.0,
                                                                  double ped_related = 6.0) {
  const int n = kNumVehicleGroups + 4;
  std::vector<std::vector<double>> m(static_cast<std::size_t>(n),
                                     std::vector<double>(static_cast<std::size_t>(n), 0.0));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      const bool ped = is_crosswalk_group(i) || is_crosswalk_group(j);
      m[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = ped ? ped_related : veh_to_veh;
    }
  }
  return m;
}

/// The default 8-phase plan: N-S and E-W through+right pairs, the two
/// protected left pairs, and the same four vehicle groups paired with the
/// crosswalks they do not cross.
inline SignalPlan default_signal_plan() {
  SignalPlan plan;
  plan.conflict = default_conflict_matrix();
  plan.intergreen = default_intergreen_matrix();
  const int N = 0, E = 1, S = 2, W = 3;
  auto veh = [](int a, Turn t) { return vehicle_group(a, t); };
  auto cw = [](int c) { return crosswalk_group(c); };
  plan.phases = {
      {0, {veh(N, Turn::through), veh(N, Turn::right), veh(S, Turn::through), veh(S, Turn::right)}},
      {1, {veh(E, Turn::through), veh(E, Turn::right), veh(W, Turn::through), veh(W, Turn::right)}},
      {2, {veh(N, Turn::left), veh(S, Turn::left)}},
      {3, {veh(E, Turn::left), veh(W, Turn::left)}},
      {4, {veh(N, Turn::through), veh(N, Turn::right), veh(S, Turn::through), veh(S, Turn::right),
           cw(E), cw(W)}},
      {5, {veh(E, Turn::through), veh(E, Turn::right), veh(W, Turn::through), veh(W, Turn::right),
           cw(N), cw(S)}},
      {6, {veh(N, Turn::left), veh(S, Turn::left), cw(E), cw(W)}},
      {7, {veh(E, Turn::left), veh(W, Turn::left), cw(N), cw(S)}},
  };
  plan.validate();
  return plan;
}

}  // namespace tsclab
