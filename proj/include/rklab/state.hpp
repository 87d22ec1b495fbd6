#pragma once

#include <cmath>
#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace rklab {

// Solution values are fixed-length vectors of doubles; scalar problems use
// length-1 states.
using State = std::vector<double>;

// Right-hand side f(x, y) of y' = f(x, y). Must be pure.
using Rhs = std::function<State(double x, std::span<const double> y)>;

inline double inf_norm(std::span<const double> v) {
  double m = 0.0;
  for (double e : v) m = std::max(m, std::abs(e));
  return m;
}

// Component of largest magnitude, sign kept. Equals v[0] for scalars.
inline double dominant(std::span<const double> v) {
  double best = 0.0;
  for (double e : v)
    if (std::abs(e) > std::abs(best)) best = e;
  return best;
}

inline bool all_finite(std::span<const double> v) {
  for (double e : v)
    if (!std::isfinite(e)) return false;
  return true;
}

inline State difference(std::span<const double> a, std::span<const double> b) {
  State out(a.size());
  for (std::size_t k = 0; k < a.size(); ++k) out[k] = a[k] - b[k];
  return out;
}

}  // namespace rklab
