#pragma once

#include <algorithm>
#include <cmath>

namespace allpay {

inline constexpr double kRelTol = 1e-9;
inline constexpr double kAbsFloor = 1e-12;

/// |a - b| <= rel * max(|a|, |b|), with an absolute floor for values near 0.
inline bool nearly_equal(double a, double b, double rel = kRelTol, double abs_floor = kAbsFloor) {
  const double diff = std::abs(a - b);
  return diff <= std::max(abs_floor, rel * std::max(std::abs(a), std::abs(b)));
}

}  // namespace allpay
