#pragma once

#include <algorithm>
#include <deque>
#include <vector>

#include "tsclab/network.hpp"
#include "tsclab/rng.hpp"
#include "tsclab/vehicle.hpp"

namespace tsclab {

/// Camera detection zones, one per lane, covering the stretch directly
/// upstream of the stop line.
struct DetectorLayout {
  double default_zone_length = 50.0;        // m
  std::vector<double> zone_length_per_lane; // optional per-lane override

  double zone_length(int lane) const {
    if (static_cast<std::size_t>(lane) < zone_length_per_lane.size()) {
      return zone_length_per_lane[static_cast<std::size_t>(lane)];
    }
    return default_zone_length;
  }

  void validate(const Network& net) const {
    for (const Lane& l : net.lanes()) {
      const double len = zone_length(l.id);
      if (!(len > 0.0)) throw ConfigError("detectors: zone length must be > 0");
      if (l.stop_line - len < -1e-9) {
        throw ConfigError("detectors: zone for lane " + std::to_string(l.id) +
                          " extends beyond the lane start");
      }
    }
  }
};

struct VehicleDetection {
  double waiting_time = 0.0;
  bool queued = false;
};

/// Ground-truth sensor readings plus the per-vehicle detail needed to apply
/// per-vehicle detection noise downstream.
struct TrueObservation {
  std::vector<double> wave;      // vehicles in zone, per lane
  std::vector<double> queue;     // of those, below the queued-speed threshold
  std::vector<double> wait_veh;  // max waiting time in zone, per lane (s)
  std::vector<double> wait_ped;  // per crosswalk (s)
  std::vector<std::vector<VehicleDetection>> detail;  // per lane
};

struct NoisyObservation {
  std::vector<double> wave;
  std::vector<double> queue;
  std::vector<double> wait_veh;
  std::vector<double> wait_ped;
};

struct NoiseParams {
  double eta_queue = 0.0;
  double eta_queue_pos = 0.0;
  double eta_wave = 0.0;
  double eta_wait_veh = 0.0;
  double speed_threshold = 5.0 / 3.6;  // m/s

  bool is_zero() const {
    return eta_queue == 0.0 && eta_queue_pos == 0.0 && eta_wave == 0.0 && eta_wait_veh == 0.0;
  }
};

/// Measures wave/queue/wait_veh per lane and wait_ped per crosswalk.
/// wait_ped is the age of the earliest unserved button press.
inline TrueObservation measure_true(const Network& net,
                                    const std::vector<std::vector<VehicleState>>& lanes,
                                    const std::vector<std::deque<double>>& ped_presses, double now,
                                    const DetectorLayout& layout, double speed_threshold) {
  TrueObservation obs;
  const auto n_lanes = static_cast<std::size_t>(net.num_lanes());
  obs.wave.assign(n_lanes, 0.0);
  obs.queue.assign(n_lanes, 0.0);
  obs.wait_veh.assign(n_lanes, 0.0);
  obs.detail.assign(n_lanes, {});

  for (std::size_t li = 0; li < n_lanes; ++li) {
    const Lane& lane = net.lane(static_cast<int>(li));
    const double zone_start = lane.stop_line - layout.zone_length(static_cast<int>(li));
    for (const VehicleState& v : lanes[li]) {
      if (v.crossed) continue;
      if (v.position < zone_start || v.position > lane.stop_line) continue;
      VehicleDetection d;
      d.waiting_time = v.waiting_time;
      d.queued = v.speed < speed_threshold;
      obs.wave[li] += 1.0;
      if (d.queued) obs.queue[li] += 1.0;
      obs.wait_veh[li] = std::max(obs.wait_veh[li], d.waiting_time);
      obs.detail[li].push_back(d);
    }
  }

  obs.wait_ped.assign(ped_presses.size(), 0.0);
  for (std::size_t c = 0; c < ped_presses.size(); ++c) {
    if (!ped_presses[c].empty()) {
      obs.wait_ped[c] = std::max(0.0, now - ped_presses[c].front());
    }
  }
  return obs;
}

/// Applies the camera noise mechanisms: per-vehicle misses (eta_queue for
/// queued, eta_wave for moving vehicles), misclassification of detected
/// moving vehicles as queued (eta_queue_pos), and an occasional tracking
/// dropout shaving a uniform {2, 6, 10} s off wait_veh. wait_veh is the
/// maximum over detected vehicles only. Pedestrian button presses are not
/// noisy, so wait_ped passes through untouched.
inline NoisyObservation apply_noise(const TrueObservation& obs, const NoiseParams& noise,
                                    RngStream& rng) {
  NoisyObservation out;
  out.wait_ped = obs.wait_ped;
  const std::size_t n_lanes = obs.wave.size();
  out.wave.assign(n_lanes, 0.0);
  out.queue.assign(n_lanes, 0.0);
  out.wait_veh.assign(n_lanes, 0.0);

  if (noise.is_zero()) {
    out.wave = obs.wave;
    out.queue = obs.queue;
    out.wait_veh = obs.wait_veh;
    return out;
  }

  static const std::vector<double> kDropDurations{2.0, 6.0, 10.0};
  for (std::size_t li = 0; li < n_lanes; ++li) {
    double wave = 0.0;
    double queue = 0.0;
    double wait = 0.0;
    for (const VehicleDetection& d : obs.detail[li]) {
      const double miss_p = d.queued ? noise.eta_queue : noise.eta_wave;
      if (miss_p > 0.0 && rng.bernoulli(miss_p)) continue;  // vehicle missed
      wave += 1.0;
      bool queued = d.queued;
      if (!queued && noise.eta_queue_pos > 0.0 && rng.bernoulli(noise.eta_queue_pos)) {
        queued = true;  // misclassified as waiting
      }
      if (queued) queue += 1.0;
      wait = std::max(wait, d.waiting_time);
    }
    if (noise.eta_wait_veh > 0.0 && rng.bernoulli(noise.eta_wait_veh)) {
      wait = std::max(0.0, wait - rng.choice(kDropDurations));
    }
    out.wave[li] = wave;
    out.queue[li] = queue;
    out.wait_veh[li] = wait;
  }
  return out;
}

}  // namespace tsclab
