// SPDX-License-Identifier: Apache-2.0

#ifndef CUTTERS_LINALG_HPP
#define CUTTERS_LINALG_HPP

#include <cmath>
#include <cstddef>
#include <vector>

namespace cutters {

/// A point of the ambient space, 64-bit coordinates.
using Vector = std::vector<double>;

inline double dot(const Vector& x, const Vector& y) {
  double s = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) s += x[i] * y[i];
  return s;
}

inline double norm_sq(const Vector& x) { return dot(x, x); }

inline double norm(const Vector& x) { return std::sqrt(norm_sq(x)); }

inline double dist_sq(const Vector& x, const Vector& y) {
  double s = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double d = x[i] - y[i];
    s += d * d;
  }
  return s;
}

inline double dist(const Vector& x, const Vector& y) { return std::sqrt(dist_sq(x, y)); }

/// x + t*d
inline Vector add_scaled(const Vector& x, double t, const Vector& d) {
  Vector out(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) out[i] = x[i] + t * d[i];
  return out;
}

inline Vector sub(const Vector& x, const Vector& y) {
  Vector out(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) out[i] = x[i] - y[i];
  return out;
}

inline bool all_finite(const Vector& x) {
  for (double v : x)
    if (!std::isfinite(v)) return false;
  return true;
}

}  // namespace cutters

#endif
