#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "tsclab/car_following.hpp"
#include "tsclab/distributions.hpp"
#include "tsclab/sensing.hpp"
#include "tsclab/vehicle.hpp"

namespace tsclab {

/// The randomized simulation parameter table (car-class values; other
/// classes scale these via ClassScaling). Fields may be overridden from
/// config; the shipped values are the defaults.
struct ParamTable {
  DistSpec cf_model = DistSpec::discrete({0.0, 1.0});  // 0 = Krauss, 1 = IDM
  DistSpec tau = DistSpec::clipped_normal(1.13, 0.1, 1.0, 1.2);
  DistSpec sigma = DistSpec::clipped_normal(0.59, 0.23, 0.0, 1.0);   // Krauss only
  DistSpec delta = DistSpec::clipped_normal(3.97, 0.05, 3.7, 4.3);   // IDM only
  DistSpec speed_factor = DistSpec::clipped_normal(1.06, 0.11, 0.6, 1.4);  // per vehicle
  DistSpec speed_factor_mean_shift = DistSpec::uniform(-0.05, 0.05);       // per episode
  DistSpec min_gap = DistSpec::clipped_normal(2.9, 0.36, 1.5, 4.0);
  DistSpec jm_stopline_gap = DistSpec::clipped_normal(0.94, 0.26, 0.5, 2.0);
  DistSpec impatience = DistSpec::clipped_normal(0.29, 0.15, -0.1, 0.5);
  DistSpec accel = DistSpec::normal(2.5, 0.21);
  DistSpec decel = DistSpec::normal(4.7, 0.21);
  DistSpec length = DistSpec::clipped_normal(5.0, 0.64, 4.7, 5.0);
  DistSpec scale = DistSpec::uniform(0.85, 1.18);
  DistSpec speed_threshold = DistSpec::uniform(3.0 / 3.6, 10.0 / 3.6);
  DistSpec eta_queue = DistSpec::uniform(0.0, 0.06);
  DistSpec eta_queue_pos = DistSpec::uniform(0.0, 0.06);
  DistSpec eta_wave = DistSpec::uniform(0.0, 0.06);
  DistSpec eta_wait_veh = DistSpec::uniform(0.0, 0.1);
};

/// One complete draw defining a source-domain environment instance.
struct DomainSample {
  CfModel cf_model = CfModel::krauss;
  double tau = 1.13;
  std::optional<double> sigma;  // set iff cf_model == krauss
  std::optional<double> delta;  // set iff cf_model == idm
  double speed_factor_mean = 1.06;  // per-vehicle draws use this mean
  double speed_factor_sd = 0.11;
  double speed_factor_min = 0.6;
  double speed_factor_max = 1.4;
  double min_gap = 2.9;
  double jm_stopline_gap = 0.94;
  double impatience = 0.29;
  double accel = 2.5;
  double decel = 4.7;
  double length = 5.0;
  double scale = 1.0;
  NoiseParams noise;  // speed_threshold plus the four eta values

  CarFollowingSpec cf_spec(const Wiedemann74Spec& w74 = {}) const {
    CarFollowingSpec spec;
    spec.model = cf_model;
    spec.sigma = sigma.value_or(0.0);
    spec.delta = delta.value_or(4.0);
    spec.w74 = w74;
    return spec;
  }

  /// Per-vehicle parameters: class factors applied to the car-class draw,
  /// speed_factor sampled fresh for each vehicle.
  VehicleParams make_vehicle_params(VehicleClass cls, RngStream& rng,
                                    const ClassScaling& scaling = {}) const {
    VehicleParams p;
    const auto ci = static_cast<std::size_t>(cls);
    p.accel = accel * scaling.accel[ci];
    p.decel = decel;
    p.length = length * scaling.length[ci];
    p.min_gap = min_gap;
    p.tau = tau;
    p.jm_stopline_gap = jm_stopline_gap;
    p.impatience = impatience;
    p.vehicle_class = cls;
    p.speed_factor = std::clamp(rng.normal(speed_factor_mean, speed_factor_sd), speed_factor_min,
                                speed_factor_max);
    return p;
  }
};

/// Draws one internally consistent parameter set: sigma only for Krauss,
/// delta only for IDM. The draw order is fixed, so a given stream state
/// always yields the same sample.
inline DomainSample sample_domain(RngStream& rng, const ParamTable& table = {}) {
  DomainSample s;
  s.cf_model = sample_dist(table.cf_model, rng) < 0.5 ? CfModel::krauss : CfModel::idm;
  s.tau = sample_dist(table.tau, rng);
  if (s.cf_model == CfModel::krauss) {
    s.sigma = sample_dist(table.sigma, rng);
  } else {
    s.delta = sample_dist(table.delta, rng);
  }
  const auto sf = std::get<ClippedNormal>(table.speed_factor.dist);
  s.speed_factor_mean = sf.mean + sample_dist(table.speed_factor_mean_shift, rng);
  s.speed_factor_sd = sf.sd;
  s.speed_factor_min = sf.min;
  s.speed_factor_max = sf.max;
  s.min_gap = sample_dist(table.min_gap, rng);
  s.jm_stopline_gap = sample_dist(table.jm_stopline_gap, rng);
  s.impatience = sample_dist(table.impatience, rng);
  s.accel = sample_dist(table.accel, rng);
  s.decel = sample_dist(table.decel, rng);
  s.length = sample_dist(table.length, rng);
  s.scale = sample_dist(table.scale, rng);
  s.noise.speed_threshold = sample_dist(table.speed_threshold, rng);
  s.noise.eta_queue = sample_dist(table.eta_queue, rng);
  s.noise.eta_queue_pos = sample_dist(table.eta_queue_pos, rng);
  s.noise.eta_wave = sample_dist(table.eta_wave, rng);
  s.noise.eta_wait_veh = sample_dist(table.eta_wait_veh, rng);
  return s;
}

/// The no-randomization baseline: every parameter at its table mean (clipped
/// where the mean falls outside the clip range), Krauss dynamics, zero
/// sensor noise.
inline DomainSample table_mean_sample(const ParamTable& table = {}) {
  auto mean_of = [](const DistSpec& d) {
    if (const auto* cn = std::get_if<ClippedNormal>(&d.dist)) {
      return std::clamp(cn->mean, cn->min, cn->max);
    }
    if (const auto* uc = std::get_if<UniformContinuous>(&d.dist)) return 0.5 * (uc->a + uc->b);
    const auto& ch = std::get<UniformDiscrete>(d.dist).choices;
    double s = 0.0;
    for (double c : ch) s += c;
    return s / static_cast<double>(ch.size());
  };
  DomainSample s;
  s.cf_model = CfModel::krauss;
  s.tau = mean_of(table.tau);
  s.sigma = mean_of(table.sigma);
  const auto sf = std::get<ClippedNormal>(table.speed_factor.dist);
  s.speed_factor_mean = sf.mean;
  s.speed_factor_sd = sf.sd;
  s.speed_factor_min = sf.min;
  s.speed_factor_max = sf.max;
  s.min_gap = mean_of(table.min_gap);
  s.jm_stopline_gap = mean_of(table.jm_stopline_gap);
  s.impatience = mean_of(table.impatience);
  s.accel = mean_of(table.accel);
  s.decel = mean_of(table.decel);
  s.length = mean_of(table.length);
  s.scale = mean_of(table.scale);
  s.noise = NoiseParams{};
  s.noise.speed_threshold = mean_of(table.speed_threshold);
  return s;
}

/// Pre-sampled task set for meta-learning; reproducible from (n, seed).
struct TaskSet {
  std::vector<DomainSample> tasks;
  std::uint64_t seed = 0;
};

inline TaskSet make_task_set(int n, std::uint64_t seed, const ParamTable& table = {}) {
  if (n <= 0) throw ConfigError("make_task_set: n must be > 0");
  TaskSet set;
  set.seed = seed;
  RngStream rng(seed, /*stream=*/0x7a5b5);
  set.tasks.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) set.tasks.push_back(sample_domain(rng, table));
  return set;
}

}  // namespace tsclab
