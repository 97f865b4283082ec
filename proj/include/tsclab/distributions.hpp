#pragma once

#include <algorithm>
#include <string>
#include <variant>
#include <vector>

#include "tsclab/errors.hpp"
#include "tsclab/rng.hpp"

namespace tsclab {

struct ClippedNormal {
  double mean = 0.0;
  double sd = 1.0;
  double min = -1e300;
  double max = 1e300;
};

struct UniformContinuous {
  double a = 0.0;
  double b = 1.0;
};

struct UniformDiscrete {
  std::vector<double> choices;
};

struct DistSpec {
  std::variant<ClippedNormal, UniformContinuous, UniformDiscrete> dist;

  void validate(const std::string& name) const {
    if (const auto* cn = std::get_if<ClippedNormal>(&dist)) {
      if (cn->sd < 0.0) throw ConfigError(name + ": sd must be >= 0");
      if (cn->min > cn->max) throw ConfigError(name + ": min > max");
    } else if (const auto* uc = std::get_if<UniformContinuous>(&dist)) {
      if (uc->a > uc->b) throw ConfigError(name + ": a > b");
    } else if (const auto* ud = std::get_if<UniformDiscrete>(&dist)) {
      if (ud->choices.empty()) throw ConfigError(name + ": empty choice set");
    }
  }

  /// [lo, hi] containing every possible draw.
  std::pair<double, double> support() const {
    if (const auto* cn = std::get_if<ClippedNormal>(&dist)) return {cn->min, cn->max};
    if (const auto* uc = std::get_if<UniformContinuous>(&dist)) return {uc->a, uc->b};
    const auto& ch = std::get<UniformDiscrete>(dist).choices;
    return {*std::min_element(ch.begin(), ch.end()), *std::max_element(ch.begin(), ch.end())};
  }

  static DistSpec clipped_normal(double mean, double sd, double min, double max) {
    return DistSpec{ClippedNormal{mean, sd, min, max}};
  }
  static DistSpec normal(double mean, double sd) {
    return DistSpec{ClippedNormal{mean, sd, -1e300, 1e300}};
  }
  static DistSpec uniform(double a, double b) { return DistSpec{UniformContinuous{a, b}}; }
  static DistSpec discrete(std::vector<double> choices) {
    return DistSpec{UniformDiscrete{std::move(choices)}};
  }
};

inline double sample_dist(const DistSpec& spec, RngStream& rng) {
  if (const auto* cn = std::get_if<ClippedNormal>(&spec.dist)) {
    return std::clamp(rng.normal(cn->mean, cn->sd), cn->min, cn->max);
  }
  if (const auto* uc = std::get_if<UniformContinuous>(&spec.dist)) {
    return rng.uniform(uc->a, uc->b);
  }
  return rng.choice(std::get<UniformDiscrete>(spec.dist).choices);
}

}  // namespace tsclab
