#pragma once

// Finite-horizon sequences of positive scalars and their regularity
// properties. Every answer here is about the truncation (t_1, ..., t_N);
// nothing is claimed about the infinite sequence.

#include <cstddef>
#include <memory>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "squeeze/numeric.hpp"

namespace squeeze::seqreg {

/// Default horizon used by generators when the caller does not pick one.
inline constexpr std::size_t kDefaultHorizon = 4096;

/// Relative slack for the URP/LRP inequalities. Power sequences hit them
/// with equality (e.g. sqrt(4n) = 2 sqrt(n)) and pow() may be off by an ulp.
inline constexpr double kRegularityTol = 1e-12;

/// Strictly positive finite sequence (t_1, ..., t_N), N >= 1.
class PositiveSequence {
 public:
  explicit PositiveSequence(std::vector<double> values);

  std::size_t size() const { return values_.size(); }
  /// 1-based term t_n.
  double operator()(std::size_t n) const { return values_[n - 1]; }
  std::span<const double> values() const { return values_; }

  PositiveSequence truncated(std::size_t n) const;

  friend bool operator==(const PositiveSequence& a, const PositiveSequence& b) {
    return a.values_ == b.values_;
  }

 private:
  friend PositiveSequence dual_sequence(const PositiveSequence& tau);

  std::vector<double> values_;
  // Exact values of the dual sequence when this sequence was itself produced
  // by dual_sequence(); lets the dual map be an involution bit-for-bit.
  std::shared_ptr<const std::vector<double>> dual_;
};

/// Weight w_n >= 0 with w_1 > 0 and its primitive s_m = sum_{n<=m} w_n.
///
/// The primitive is the canonical representation: stored weights are always
/// the floating differences of the stored primitive, so
/// primitive(m) - primitive(m-1) == weight(m) holds exactly.
class Weight {
 public:
  /// From weights; the primitive is accumulated with compensation.
  explicit Weight(std::span<const double> w);
  /// From a positive nondecreasing primitive sequence.
  static Weight from_primitive(std::span<const double> s);

  std::size_t size() const { return w_.size(); }
  /// 1-based accessors.
  double weight(std::size_t n) const { return w_[n - 1]; }
  double primitive(std::size_t m) const { return s_[m - 1]; }

  std::span<const double> weights() const { return w_; }
  std::span<const double> primitives() const { return s_; }
  PositiveSequence primitive_sequence() const { return PositiveSequence(s_); }

  Weight truncated(std::size_t n) const;

 private:
  Weight() = default;
  std::vector<double> w_;
  std::vector<double> s_;
};

/// s_m; throws std::out_of_range unless 1 <= m <= N.
double primitive(const Weight& w, std::size_t m);

/// max_{m <= N} s_m / s_{ceil(m/2)}. Throws std::invalid_argument if the
/// input is not nondecreasing.
double doubling_ratio(const PositiveSequence& sigma);
double doubling_ratio(const Weight& w);

bool urp_holds(const PositiveSequence& tau, std::size_t b, double rel_tol = kRegularityTol);
bool lrp_holds(const PositiveSequence& tau, std::size_t b, double rel_tol = kRegularityTol);

/// Smallest b in [2, min(b_max, N)] with t_{bn} <= (b/2) t_n for every n with
/// bn <= N. Values b > N would be vacuous witnesses and are not searched.
std::optional<std::size_t> urp_witness(const PositiveSequence& tau, std::size_t b_max,
                                       double rel_tol = kRegularityTol);

/// Same search for 2 t_m <= t_{bm}.
std::optional<std::size_t> lrp_witness(const PositiveSequence& tau, std::size_t b_max,
                                       double rel_tol = kRegularityTol);

/// max_{n <= m} t_n / t_m (always >= 1).
double essentially_increasing_ratio(const PositiveSequence& tau);

/// (n / t_n)_{n <= N}.
PositiveSequence dual_sequence(const PositiveSequence& tau);

/// Smallest C with (1/m) sum_{n<=m} 1/t_n <= C / t_m for all m <= N.
double urp_condition_c(const PositiveSequence& tau);

/// Entrywise p-th power, p > 0.
PositiveSequence power_sequence(const PositiveSequence& tau, double p);

/// Running maximum: one nondecreasing sequence equivalent to tau when tau is
/// essentially increasing (the equivalence constant is the ratio above).
PositiveSequence running_max(const PositiveSequence& tau);

/// Equivalence a ~ b reported as the band of a_n / b_n.
RatioBand equivalence_band(const PositiveSequence& a, const PositiveSequence& b);

/// Named generators: "unit", "power:a" (t_n = n^a), "geometric:r"
/// (t_n = r^{n-1}), "explicit:[...]" or a bare JSON array.
/// An explicit list fixes the length; otherwise N terms are produced.
PositiveSequence make_sequence(std::string_view descriptor, std::size_t n = kDefaultHorizon);

/// Weight generators: "unit" (w_n = 1), "power:a" (s_n = n^a, a >= 0),
/// "geometric:r" (w_n = r^{n-1}), "explicit:[...]" or a bare JSON array of
/// weights, "primitive:[...]" for an explicit primitive sequence.
Weight make_weight(std::string_view descriptor, std::size_t n = kDefaultHorizon);

}  // namespace squeeze::seqreg
