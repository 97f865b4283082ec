#pragma once

#include <array>
#include <deque>
#include <functional>
#include <optional>
#include <vector>

#include "tsclab/car_following.hpp"
#include "tsclab/network.hpp"
#include "tsclab/rng.hpp"
#include "tsclab/vehicle.hpp"

namespace tsclab {

/// Piecewise-constant rate over time. Beyond the last breakpoint the final
/// rate keeps holding, so profiles are total functions.
struct PiecewiseRate {
  std::vector<double> t_end;  // segment end times, strictly increasing
  std::vector<double> rate;   // one per segment, >= 0

  double at(double t) const {
    for (std::size_t i = 0; i < t_end.size(); ++i) {
      if (t < t_end[i]) return rate[i];
    }
    return rate.empty() ? 0.0 : rate.back();
  }

  double span() const { return t_end.empty() ? 0.0 : t_end.back(); }

  static PiecewiseRate constant(double r) { return PiecewiseRate{{1e18}, {r}}; }

  PiecewiseRate scaled(double f) const {
    PiecewiseRate out = *this;
    for (double& r : out.rate) r *= f;
    return out;
  }
};

struct DemandProfile {
  std::vector<std::array<PiecewiseRate, kNumTurns>> vehicle_rates;  // [approach][turn], veh/s
  std::vector<PiecewiseRate> pedestrian_rates;                      // per crosswalk, ped/s
  std::array<double, kNumVehicleClasses> class_mix{1.0, 0.0, 0.0, 0.0, 0.0};

  double span() const {
    double s = 0.0;
    for (const auto& per_turn : vehicle_rates) {
      for (const auto& r : per_turn) s = std::max(s, r.span());
    }
    for (const auto& r : pedestrian_rates) s = std::max(s, r.span());
    return s;
  }

  void validate(const Network& net) const {
    if (static_cast<int>(vehicle_rates.size()) != net.num_approaches()) {
      throw ConfigError("demand.vehicle_rates: one entry per approach required");
    }
    if (static_cast<int>(pedestrian_rates.size()) != net.num_crosswalks()) {
      throw ConfigError("demand.pedestrian_rates: one entry per crosswalk required");
    }
    double mix_sum = 0.0;
    for (double w : class_mix) {
      if (w < 0.0) throw ConfigError("demand.class_mix: negative weight");
      mix_sum += w;
    }
    if (std::fabs(mix_sum - 1.0) > 1e-9) {
      throw ConfigError("demand.class_mix: weights must sum to 1");
    }
    for (std::size_t a = 0; a < vehicle_rates.size(); ++a) {
      for (int t = 0; t < kNumTurns; ++t) {
        for (double r : vehicle_rates[a][static_cast<std::size_t>(t)].rate) {
          if (r < 0.0) {
            throw ConfigError("demand.vehicle_rates[" + std::to_string(a) + "][" +
                              turn_name(static_cast<Turn>(t)) + "]: negative rate");
          }
        }
      }
    }
    for (std::size_t c = 0; c < pedestrian_rates.size(); ++c) {
      for (double r : pedestrian_rates[c].rate) {
        if (r < 0.0) {
          throw ConfigError("demand.pedestrian_rates[" + std::to_string(c) + "]: negative rate");
        }
      }
    }
  }
};

using VehicleParamsFactory = std::function<VehicleParams(VehicleClass, RngStream&)>;

struct SpawnResult {
  std::vector<VehicleState> entered;     // vehicles placed on their lane this step
  std::vector<int> pedestrian_presses;   // per crosswalk, new button presses
};

/// Poisson arrival generator with per-lane boundary queues: arrivals whose
/// entry cell is blocked wait at the boundary instead of being dropped.
class DemandGenerator {
 public:
  DemandGenerator(const Network* net, const DemandProfile* profile, double scale)
      : net_(net),
        profile_(profile),
        scale_(scale),
        mix_(profile->class_mix.begin(), profile->class_mix.end()),
        pending_(static_cast<std::size_t>(net->num_lanes())) {
    if (!(scale > 0.0) && scale != 0.0) throw ConfigError("demand.scale: must be >= 0");
  }

  /// Draw arrivals for [t, t+dt) and release queued vehicles whose lane
  /// entry is clear. `lane_vehicles` holds active vehicles per lane, front
  /// first (ascending is fine too; only the rearmost matters here).
  SpawnResult spawn_arrivals(double t, double dt, RngStream& rng,
                             const VehicleParamsFactory& factory,
                             const std::vector<std::vector<VehicleState>>& lane_vehicles) {
    SpawnResult result;
    result.pedestrian_presses.assign(static_cast<std::size_t>(net_->num_crosswalks()), 0);

    for (int a = 0; a < net_->num_approaches(); ++a) {
      for (int turn = 0; turn < kNumTurns; ++turn) {
        const PiecewiseRate& r = profile_->vehicle_rates[static_cast<std::size_t>(a)]
                                                        [static_cast<std::size_t>(turn)];
        const double mean = r.at(t) * scale_ * dt;
        const int n = rng.poisson(mean);
        for (int i = 0; i < n; ++i) {
          const int lane = net_->lane_for_movement(a, static_cast<Turn>(turn));
          if (lane < 0) continue;  // movement without a lane: demand ignored by config
          VehicleState v;
          v.id = next_id_++;
          v.lane = lane;
          v.movement = static_cast<Turn>(turn);
          v.spawn_time = t;
          const auto cls = static_cast<VehicleClass>(rng.weighted_choice(mix_));
          v.params = factory(cls, rng);
          v.w74_z = rng.uniform01();
          pending_[static_cast<std::size_t>(lane)].push_back(v);
          ++drawn_total_;
        }
      }
    }

    for (int c = 0; c < net_->num_crosswalks(); ++c) {
      const double mean = profile_->pedestrian_rates[static_cast<std::size_t>(c)].at(t) * dt;
      const int n = rng.poisson(mean);
      result.pedestrian_presses[static_cast<std::size_t>(c)] = n;
      ped_total_ += n;
    }

    // Release boundary queues where the entry cell is clear.
    for (int lane = 0; lane < net_->num_lanes(); ++lane) {
      auto& queue = pending_[static_cast<std::size_t>(lane)];
      std::vector<VehicleState> local_entered;
      while (!queue.empty()) {
        VehicleState v = queue.front();
        const VehicleState* rearmost = nullptr;
        const auto& active = lane_vehicles[static_cast<std::size_t>(lane)];
        if (!local_entered.empty()) {
          rearmost = &local_entered.back();
        } else if (!active.empty()) {
          rearmost = &active.back();
        }
        const double front_pos = v.params.length;  // rear bumper flush with lane start
        double entry_speed = v.params.desired_speed(net_->lane(lane).speed_limit);
        if (rearmost) {
          const double bumper_gap = (rearmost->position - rearmost->params.length) - front_pos;
          if (bumper_gap < v.params.min_gap) break;  // blocked, keep waiting
          entry_speed = std::min(entry_speed,
                                 krauss_safe_speed(rearmost->speed, bumper_gap - v.params.min_gap,
                                                   v.params.decel, v.params.tau));
        }
        v.position = front_pos;
        v.speed = std::max(0.0, entry_speed);
        queue.pop_front();
        local_entered.push_back(v);
        ++entered_total_;
      }
      for (auto& v : local_entered) result.entered.push_back(std::move(v));
    }
    return result;
  }

  long long entered_total() const { return entered_total_; }
  long long drawn_total() const { return drawn_total_; }
  long long pedestrians_total() const { return ped_total_; }

  int pending_count() const {
    int n = 0;
    for (const auto& q : pending_) n += static_cast<int>(q.size());
    return n;
  }

 private:
  const Network* net_;
  const DemandProfile* profile_;
  double scale_;
  std::vector<double> mix_;
  std::vector<std::deque<VehicleState>> pending_;
  int next_id_ = 0;
  long long drawn_total_ = 0;
  long long entered_total_ = 0;
  long long ped_total_ = 0;
};

}  // namespace tsclab
