#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <span>
#include <vector>

namespace squeeze {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

/// Tolerance used by every "lhs <= rhs" verdict in the library.
inline constexpr double kVerdictTol = 1e-10;

/// Neumaier's variant of Kahan summation.
class CompensatedSum {
 public:
  void add(double x) {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x)) {
      carry_ += (sum_ - t) + x;
    } else {
      carry_ += (x - t) + sum_;
    }
    sum_ = t;
  }
  CompensatedSum& operator+=(double x) {
    add(x);
    return *this;
  }
  double value() const { return sum_ + carry_; }

 private:
  double sum_ = 0.0;
  double carry_ = 0.0;
};

/// Sums in descending-magnitude order with compensation, so the result does
/// not depend on the order in which the terms were produced.
inline double sum_descending(std::vector<double> terms) {
  std::sort(terms.begin(), terms.end(),
            [](double a, double b) { return std::abs(a) > std::abs(b); });
  CompensatedSum acc;
  for (double t : terms) acc.add(t);
  return acc.value();
}

/// `lhs <= rhs` up to kVerdictTol relative to |rhs|. When rhs is zero the
/// caller supplies the scale used for the absolute slack.
inline bool leq_tol(double lhs, double rhs, double tol = kVerdictTol,
                    double scale = 0.0) {
  return lhs <= rhs + tol * std::max(std::abs(rhs), scale);
}

/// Closed (lo, hi) band of observed ratios. Empty until the first add().
struct RatioBand {
  double lo = kInf;
  double hi = -kInf;
  std::size_t count = 0;

  void add(double r) {
    lo = std::min(lo, r);
    hi = std::max(hi, r);
    ++count;
  }
  void merge(const RatioBand& other) {
    lo = std::min(lo, other.lo);
    hi = std::max(hi, other.hi);
    count += other.count;
  }
  bool empty() const { return count == 0; }
};

/// Band of a_i / b_i over the common index range.
inline RatioBand ratio_band(std::span<const double> a, std::span<const double> b) {
  RatioBand band;
  const std::size_t n = std::min(a.size(), b.size());
  for (std::size_t i = 0; i < n; ++i) band.add(a[i] / b[i]);
  return band;
}

}  // namespace squeeze
