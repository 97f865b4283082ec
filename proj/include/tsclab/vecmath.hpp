#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

#include "tsclab/errors.hpp"

namespace tsclab {

using Vec = std::vector<double>;

inline void vec_fill(Vec& v, double x) {
  for (double& e : v) e = x;
}

inline double vec_dot(const Vec& a, const Vec& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

/// y += alpha * x
inline void vec_axpy(Vec& y, double alpha, const Vec& x) {
  for (std::size_t i = 0; i < y.size(); ++i) y[i] += alpha * x[i];
}

inline void vec_scale(Vec& v, double alpha) {
  for (double& e : v) e *= alpha;
}

inline Vec vec_sub(const Vec& a, const Vec& b) {
  Vec out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] - b[i];
  return out;
}

inline double vec_max_abs(const Vec& v) {
  double m = 0.0;
  for (double e : v) m = std::max(m, std::fabs(e));
  return m;
}

inline bool vec_all_finite(const Vec& v) {
  for (double e : v) {
    if (!std::isfinite(e)) return false;
  }
  return true;
}

inline void vec_require_finite(const Vec& v, const char* what) {
  if (!vec_all_finite(v)) throw NumericsError(std::string("non-finite values in ") + what);
}

}  // namespace tsclab
