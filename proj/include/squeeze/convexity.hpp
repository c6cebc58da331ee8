#pragma once

// Uniform convexity: estimates of the modulus of convexity, the q-triangle
// law it implies for well-separated vectors of comparable size, the balanced
// split of a finite sum and the resulting summation bound.

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <span>
#include <vector>

#include "squeeze/norm_oracle.hpp"

namespace squeeze::convexity {

using Vector = std::vector<double>;

struct ModulusEstimate {
  double eps = 0.0;
  /// Smallest value of 1 - ||f + g|| / 2 seen over admissible pairs.
  double estimate = 0.0;
  Vector f;
  Vector g;
  std::size_t evaluations = 0;
};

/// Norm evaluations spent by one restart of the local search.
inline constexpr std::size_t kRestartLength = 4000;

/// Multi-start local search over unit pairs (f, g) with ||f - g|| >= eps.
/// Each candidate pair is moved onto ||f - g|| = eps by bisection along the
/// arc f -> d -> -f on the unit sphere. The search visits the same candidates
/// in the same order for every budget, so the estimate can only decrease as
/// the budget grows. Throws std::invalid_argument unless 0 <= eps <= 2.
ModulusEstimate modulus_estimate(const NormOracle& norm, double eps, std::size_t budget,
                                 std::uint64_t seed = 0);

/// 1 - sqrt(1 - eps^2 / 4), the modulus of any inner-product space.
double hilbert_modulus(double eps);

struct QPolicy {
  /// q = 1 + fraction (log_lambda 2 - 1) when lambda > 1.
  double fraction = 0.5;
  /// q used when lambda <= 1, where any q > 1 is admissible.
  double q_when_lambda_le_one = 2.0;
};

struct ConvexityConstants {
  double eps = std::numeric_limits<double>::quiet_NaN();
  double delta = 0.0;
  double lambda = 0.0;
  double q = 0.0;
  double eta = 0.0;
  double K = 0.0;
};

/// lambda = 2 (1 - delta); q from the policy; eta = 1 - (lambda^q - 1)^{1/q}
/// when lambda > 1 and eta = 1 otherwise; K = 2 / eta.
/// Throws std::invalid_argument unless 0 < delta <= 1.
ConvexityConstants qlaw_constants(double delta, QPolicy policy = {},
                                  double eps = std::numeric_limits<double>::quiet_NaN());

/// Estimates delta(eps) and derives the constants from it.
ConvexityConstants constants_for(const NormOracle& norm, double eps, std::size_t budget,
                                 std::uint64_t seed = 0, QPolicy policy = {});

enum class Verdict { holds, violated, not_applicable };

struct QLawVerdict {
  Verdict verdict = Verdict::not_applicable;
  double lhs = 0.0;  ///< ||f + g||^q
  double rhs = 0.0;  ///< ||f||^q + ||g||^q
};

/// Checks ||f + g||^q <= ||f||^q + ||g||^q when min(||f||, ||g||) >=
/// (1 - eta) max and ||f - g|| >= eps max; otherwise not applicable.
QLawVerdict verify_qlaw(std::span<const double> f, std::span<const double> g,
                        const NormOracle& norm, const ConvexityConstants& c);

struct SplitPoint {
  std::size_t k = 0;
  double a_k = 0.0;    ///< | ||sum_{n<=k} f_n|| - ||sum_{n>k} f_n|| |
  double bound = 0.0;  ///< max_n ||f_n||
};

/// Balanced split: the largest k with ||P_k|| - ||S_k|| <= 0, or k + 1 if
/// that gives a smaller difference. Throws on an empty family.
SplitPoint split_point(std::span<const Vector> fs, const NormOracle& norm);

struct SumBoundOptions {
  std::size_t exhaustive_limit = 64;
  std::size_t random_triples = 20000;
  std::uint64_t seed = 0;
};

struct SumBoundReport {
  bool condition_holds = true;
  bool exhaustive = true;
  std::size_t triples_checked = 0;
  /// max over checked (j, k, m) of ||sum_{j..k}|| / ||sum_{j..k} - sum_{k+1..m}||.
  double worst_condition_ratio = 0.0;
  /// ||sum f_n|| / (sum ||f_n||^q)^{1/q}.
  double ratio = 0.0;
  double K = 0.0;
  double q = 0.0;
  bool bound_holds = false;
};

/// Scans ||sum_{j..k} f_n|| <= C ||sum_{j..k} f_n - sum_{k+1..m} f_n|| over
/// all 1 <= j <= k <= m <= M (random triples when M exceeds the limit) and
/// compares the summation ratio with K. The constants should come from
/// eps = 1 / (1 + C).
SumBoundReport summation_bound_check(std::span<const Vector> fs, const NormOracle& norm, double C,
                                     const ConvexityConstants& c, SumBoundOptions options = {});

struct RemarkValue {
  double norm_value = 0.0;  ///< ||sum_{n=j}^m x_n|| computed from the vectors
  double closed_form = 0.0; ///< sqrt(s^2 + s), s = m - j + 1
  double ratio = 0.0;       ///< sqrt(s^2 + s) / (sqrt 2 s^{1/q})
};

/// x_n = e_0 + e_n in ell_2^{m+1}, 1 <= j <= m.
RemarkValue remark_counterexample(std::size_t j, std::size_t m, double q);

/// ||sum_{n=j}^m x_n|| for all j <= m, built incrementally from the vectors;
/// entry j - 1 of the result.
std::vector<double> remark_norm_table(std::size_t m);

/// sqrt(s^2 + s) / (sqrt 2 s^{1/q}).
double remark_ratio(double s, double q);

}  // namespace squeeze::convexity
