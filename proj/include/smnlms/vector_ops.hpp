#pragma once

#include <cmath>
#include <concepts>
#include <cstddef>
#include <span>
#include <vector>

#include "smnlms/error.hpp"

namespace smnlms {

using Vector = std::vector<double>;

template <std::floating_point T>
T dot(std::span<const T> a, std::span<const T> b) {
  require_same_size("dot", a.size(), b.size());
  T acc{0};
  for (std::size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
  return acc;
}

template <std::floating_point T>
T squared_norm(std::span<const T> a) {
  T acc{0};
  for (const T v : a) acc += v * v;
  return acc;
}

template <std::floating_point T>
bool all_finite(std::span<const T> a) {
  for (const T v : a) {
    if (!std::isfinite(v)) return false;
  }
  return true;
}

inline double dot(const Vector& a, const Vector& b) {
  return dot<double>(std::span<const double>(a), std::span<const double>(b));
}

inline double squared_norm(const Vector& a) {
  return squared_norm<double>(std::span<const double>(a));
}

// Neumaier-compensated running sum; used for the long accumulations in the
// global report where the l2 margin can be close to machine precision.
class CompensatedSum {
 public:
  void add(double v) noexcept {
    const double t = sum_ + v;
    if (std::abs(sum_) >= std::abs(v)) {
      comp_ += (sum_ - t) + v;
    } else {
      comp_ += (v - t) + sum_;
    }
    sum_ = t;
  }
  double value() const noexcept { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

}  // namespace smnlms
