#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <string>
#include <vector>

namespace toplist {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

// Absolute tolerance for probability/confidence sums parsed from text.
inline constexpr double kNormTol = 1e-9;

// Absolute slack for validity and majorization boundary comparisons.
inline constexpr double kBoundaryTol = 1e-12;

/// Neumaier-compensated accumulator. Sequential and order-stable; a +inf
/// summand absorbs and the compensation term is dropped to avoid NaN.
class StableSum {
 public:
  void add(double x) {
    if (std::isinf(x) || std::isinf(sum_)) {
      sum_ += x;
      comp_ = 0.0;
      return;
    }
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x)) {
      comp_ += (sum_ - t) + x;
    } else {
      comp_ += (x - t) + sum_;
    }
    sum_ = t;
  }

  double value() const { return std::isinf(sum_) ? sum_ : sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

inline double stable_sum(const std::vector<double>& values) {
  StableSum s;
  for (double v : values) s.add(v);
  return s.value();
}

/// Sum in a permutation-independent order (values sorted ascending first),
/// so any reordering of the input yields a bit-identical result.
inline double canonical_sum(std::vector<double> values) {
  std::sort(values.begin(), values.end());
  StableSum s;
  for (double v : values) s.add(v);
  return s.value();
}

/// Format with `digits` significant digits; infinities render as "inf".
inline std::string format_number(double x, int digits = 6) {
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*g", digits, x);
  return buf;
}

}  // namespace toplist
