#pragma once

// The thresholding greedy algorithm and finite-horizon estimates of the
// constants that measure how well it behaves for a given basis. Every value
// here is a lower bound for the corresponding infinite-dimensional constant.

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "squeeze/basis.hpp"
#include "squeeze/seqreg.hpp"

namespace squeeze::greedy {

/// Default cap on norm evaluations for exhaustive enumeration.
inline constexpr std::size_t kDefaultBudget = 2'000'000;

/// (x*_n(f))_{n <= M}.
std::vector<double> coefficient_transform(std::span<const double> f, const Basis& basis);

/// Indices sorted by |coefficient| descending; ties keep basis order.
std::vector<std::size_t> greedy_ordering(std::span<const double> coeffs);

/// G_m(f) = sum over the first m indices of the ordering of x*_n(f) x_n.
Eigen::VectorXd greedy_step(std::span<const double> f, const Basis& basis, std::size_t m);

/// Same, starting from known coefficients of f.
Eigen::VectorXd greedy_approximant(std::span<const double> coeffs, const Basis& basis, std::size_t m);

struct QuasiGreedyEstimate {
  double value = 1.0;
  std::vector<double> witness;  ///< coefficients of the worst f found
  std::size_t m = 0;
};

/// max over sampled f and all m of max(||f - G_m f||, ||G_m f||) / ||f||.
QuasiGreedyEstimate quasi_greedy_constant(const Basis& basis, std::size_t samples, std::uint64_t seed = 0);

enum class Mode { exact, sampled };

struct EnumerationOptions {
  Mode mode = Mode::exact;
  std::size_t samples = 256;  ///< per size, sampled mode
  std::size_t budget = kDefaultBudget;
  std::uint64_t seed = 0;
};

/// Norm evaluations needed to enumerate all signed subsets of sizes 1..k_max.
double exact_enumeration_cost(std::size_t M, std::size_t k_max);

/// Exact mode when the enumeration of sizes 1..k_max fits in the budget,
/// sampled mode otherwise.
EnumerationOptions auto_options(std::size_t M, std::size_t k_max, std::size_t budget, std::size_t samples,
                                std::uint64_t seed);

/// phi_u(m) for m = 1..m_max (entry m - 1): sup of ||sum_{n in A} eps_n x_n||
/// over |A| <= m. Exact mode throws BudgetExceeded before enumerating when
/// the required number of evaluations exceeds the budget.
std::vector<double> phi_upper(const Basis& basis, std::size_t m_max, const EnumerationOptions& options);

/// phi_l(m) for m = 1..m_max: inf of the same quantity over |A| >= m, so all
/// sizes up to M are visited.
std::vector<double> phi_lower(const Basis& basis, std::size_t m_max, const EnumerationOptions& options);

double super_democracy_upper(const Basis& basis, std::size_t m, const EnumerationOptions& options);
double super_democracy_lower(const Basis& basis, std::size_t m, const EnumerationOptions& options);

/// ||S_A|| for S_A f = sum_{n in A} x*_n(f) x_n. Exact (power iteration) on
/// ell_2 ambients, a multi-start lower bound otherwise.
double projection_norm(const Basis& basis, std::span<const std::size_t> subset, std::uint64_t seed = 0);

/// Largest singular value of a matrix by power iteration on A^T A.
double spectral_norm(const Eigen::MatrixXd& a);

/// k_m for m = 1..m_max: max of ||S_A|| over visited |A| <= m. Subsets are
/// enumerated when they fit in the budget and sampled otherwise.
std::vector<double> conditionality_table(const Basis& basis, std::size_t m_max,
                                         const EnumerationOptions& options);
double conditionality_constant(const Basis& basis, std::size_t m, const EnumerationOptions& options);

/// Lower bounds for L_m, m = 1..m_max, as the running maximum over m of
/// ||f - G_m f|| / ||f - g|| for sampled f and candidate m-term g.
std::vector<double> lebesgue_table(const Basis& basis, std::size_t m_max, std::size_t samples,
                                   std::uint64_t seed = 0);
double lebesgue_constant_lower(const Basis& basis, std::size_t m, std::size_t samples, std::uint64_t seed = 0);

struct FundamentalWeight {
  seqreg::Weight weight;
  std::vector<double> phi_u;
  /// 1-based indices with w_n <= 0.
  std::vector<std::size_t> degenerate;
};

/// w_n = phi_u(n) - phi_u(n - 1), phi_u(0) = 0, for n = 1..m_max.
FundamentalWeight weight_from_fundamental(const Basis& basis, std::size_t m_max,
                                          const EnumerationOptions& options);

/// Functionals as vectors and vectors as functionals, in the dual ambient:
/// the supplied one, the exact ell_p' dual, or an estimated dual norm when
/// allowed (and flagged approximate).
Basis dual_basis(const Basis& basis, bool allow_estimate = true);

/// (1/m) phi_u[B](m) phi_u[B*](m) for m = 1..m_max.
std::vector<double> bidemocracy_table(const Basis& basis, std::size_t m_max, const EnumerationOptions& options);
double bidemocracy_ratio(const Basis& basis, std::size_t m, const EnumerationOptions& options);

}  // namespace squeeze::greedy
