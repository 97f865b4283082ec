#pragma once

#include <array>
#include <string>
#include <vector>

#include "tsclab/errors.hpp"

namespace tsclab {

enum class Turn { left = 0, through = 1, right = 2 };

constexpr int kNumTurns = 3;

inline const char* turn_name(Turn t) {
  switch (t) {
    case Turn::left: return "left";
    case Turn::through: return "through";
    case Turn::right: return "right";
  }
  return "?";
}

struct LaneConfig {
  double length = 150.0;            // m
  double stop_line_offset = 145.0;  // m from lane start
  std::vector<Turn> allowed_movements;
};

struct Approach {
  std::string id;
  std::vector<LaneConfig> lanes;
  double speed_limit = 13.89;  // m/s
};

struct Crosswalk {
  std::string id;
  int attached_approach = 0;
  bool demand_button = true;
};

struct GeometryPerturbation {
  std::array<double, 4> stop_line_shift{0.0, 0.0, 0.0, 0.0};  // m, per approach
  double lane_length_scale = 1.0;
};

struct NetworkConfig {
  std::vector<Approach> approaches;
  std::vector<Crosswalk> crosswalks;
  GeometryPerturbation geometry_perturbation;
};

/// A lane with geometry perturbation already applied.
struct Lane {
  int id = 0;  // global index, approach-major
  int approach = 0;
  int index_in_approach = 0;
  double length = 0.0;
  double stop_line = 0.0;
  double speed_limit = 0.0;
  std::vector<Turn> allowed_movements;

  bool allows(Turn t) const {
    for (Turn a : allowed_movements) {
      if (a == t) return true;
    }
    return false;
  }
};

/// Immutable resolved intersection layout.
class Network {
 public:
  Network() = default;

  const std::vector<Lane>& lanes() const { return lanes_; }
  const std::vector<Crosswalk>& crosswalks() const { return crosswalks_; }
  int num_lanes() const { return static_cast<int>(lanes_.size()); }
  int num_crosswalks() const { return static_cast<int>(crosswalks_.size()); }
  int num_approaches() const { return num_approaches_; }

  /// Global lane id serving (approach, turn); -1 if the movement has no lane.
  int lane_for_movement(int approach, Turn turn) const {
    for (const Lane& l : lanes_) {
      if (l.approach == approach && l.allows(turn)) return l.id;
    }
    return -1;
  }

  const Lane& lane(int id) const { return lanes_[static_cast<std::size_t>(id)]; }

  static Network build(const NetworkConfig& config);

 private:
  std::vector<Lane> lanes_;
  std::vector<Crosswalk> crosswalks_;
  int num_approaches_ = 0;
};

inline Network Network::build(const NetworkConfig& config) {
  if (config.approaches.size() != 4) {
    throw ConfigError("network.approaches: expected exactly 4, got " +
                      std::to_string(config.approaches.size()));
  }
  if (config.crosswalks.size() != 4) {
    throw ConfigError("network.crosswalks: expected exactly 4, got " +
                      std::to_string(config.crosswalks.size()));
  }
  const GeometryPerturbation& gp = config.geometry_perturbation;
  if (!(gp.lane_length_scale > 0.0)) {
    throw ConfigError("network.geometry_perturbation.lane_length_scale: must be > 0");
  }

  Network net;
  net.num_approaches_ = static_cast<int>(config.approaches.size());
  int lane_id = 0;
  for (std::size_t a = 0; a < config.approaches.size(); ++a) {
    const Approach& ap = config.approaches[a];
    const std::string path = "network.approaches[" + std::to_string(a) + "]";
    if (ap.lanes.empty()) throw ConfigError(path + ".lanes: at least one lane required");
    if (!(ap.speed_limit > 0.0)) throw ConfigError(path + ".speed_limit: must be > 0");
    for (std::size_t li = 0; li < ap.lanes.size(); ++li) {
      const LaneConfig& lc = ap.lanes[li];
      const std::string lpath = path + ".lanes[" + std::to_string(li) + "]";
      if (!(lc.length > 0.0)) throw ConfigError(lpath + ".length: must be > 0");
      if (lc.stop_line_offset < 0.0 || lc.stop_line_offset >= lc.length) {
        throw ConfigError(lpath + ".stop_line_offset: must be in [0, length)");
      }
      if (lc.allowed_movements.empty()) {
        throw ConfigError(lpath + ".allowed_movements: must not be empty");
      }
      Lane lane;
      lane.id = lane_id++;
      lane.approach = static_cast<int>(a);
      lane.index_in_approach = static_cast<int>(li);
      lane.length = lc.length * gp.lane_length_scale;
      lane.stop_line = lc.stop_line_offset + gp.stop_line_shift[a];
      lane.speed_limit = ap.speed_limit;
      lane.allowed_movements = lc.allowed_movements;
      if (lane.stop_line < 0.0 || lane.stop_line >= lane.length) {
        throw ConfigError(lpath + ": perturbed stop line leaves the lane");
      }
      net.lanes_.push_back(std::move(lane));
    }
  }
  for (std::size_t c = 0; c < config.crosswalks.size(); ++c) {
    const Crosswalk& cw = config.crosswalks[c];
    if (cw.attached_approach < 0 || cw.attached_approach >= net.num_approaches_) {
      throw ConfigError("network.crosswalks[" + std::to_string(c) +
                        "].attached_approach: out of range");
    }
    net.crosswalks_.push_back(cw);
  }
  return net;
}

inline Network build_network(const NetworkConfig& config) { return Network::build(config); }

}  // namespace tsclab
