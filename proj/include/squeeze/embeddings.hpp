#pragma once

// Finite-sample checks of the Lorentz embeddings d_{1,q}(w) -> X -> d_{1,r}(w)
// induced by a basis whose fundamental function is the primitive of w.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "squeeze/basis.hpp"
#include "squeeze/convexity.hpp"
#include "squeeze/greedy.hpp"

namespace squeeze::embeddings {

struct DyadicLevel {
  int k = 1;
  /// 0-based coefficient indices, in greedy order.
  std::vector<std::size_t> indices;
};

/// Levels J_k = {n : t 2^{-k} < |a_n| <= t 2^{-k+1}}, t = max |a_n|, with
/// empty levels omitted. Zero input gives no levels. Membership is decided
/// with exact power-of-two scalings.
std::vector<DyadicLevel> dyadic_decomposition(std::span<const double> coeffs);

/// f_k = sum_{n in J_k} a_n x_n.
std::vector<convexity::Vector> level_vectors(const Basis& basis, std::span<const double> coeffs,
                                             std::span<const DyadicLevel> levels);

struct LevelBound {
  int k = 1;
  std::size_t size = 0;
  double lhs = 0.0;  ///< ||f_k||
  double rhs = 0.0;  ///< t 2^{-k+1} phi_u(|J_k|)
  bool holds = true;
};

/// Compares each level vector with t 2^{-k+1} phi_u(|J_k|); phi_u[i] is
/// phi_u(i + 1) and must cover every level size.
std::vector<LevelBound> level_norm_bound(const Basis& basis, std::span<const double> coeffs,
                                         std::span<const DyadicLevel> levels, std::span<const double> phi_u);

/// sum_{k=j}^{k_max} 2^{-k q}.
double abel_tail_sum(int j, int k_max, double q);
/// 2^{-j q} / (1 - 2^{-q}).
double abel_tail_bound(int j, double q);

struct EmbeddingOptions {
  std::size_t samples = 256;
  std::uint64_t seed = 0;
  std::size_t budget = greedy::kDefaultBudget;
  std::size_t qg_samples = 256;
  std::size_t phi_samples = 256;
  std::size_t modulus_budget = 200'000;
  convexity::QPolicy policy{};
};

struct LowerEmbedding {
  greedy::FundamentalWeight fundamental;
  bool phi_exact = false;
  double quasi_greedy = 0.0;  ///< measured C
  double eps = 0.0;           ///< 1 / (1 + C)
  double delta = 0.0;         ///< modulus estimate at eps
  std::optional<convexity::ConvexityConstants> constants;
  double D = 0.0;  ///< max over samples of ||a||_(w_q, q) / ||a||_{1,q,w_u}
  std::optional<double> theory_constant;  ///< 4 K D (2^q - 1)^{-1/q}
  std::string theory_note;
  RatioBand band;  ///< ||sum a_n x_n|| / ||a||_{1,q,w_u}
  std::optional<bool> verdict;
  /// Samples with ||sum a_n x_n|| > 4 K (2^q - 1)^{-1/q} ||a||_(w_q, q).
  std::size_t chain_violations = 0;
};

/// Measures the lower embedding for user index q > 1. The theory constant is
/// produced only when K is available (positive modulus estimate) and q does
/// not exceed the convexity index.
LowerEmbedding lower_embedding_check(const Basis& basis, double q, const EmbeddingOptions& options);

/// Same, reusing an already computed fundamental weight and quasi-greedy constant.
LowerEmbedding lower_embedding_check(const Basis& basis, double q, const EmbeddingOptions& options,
                                     const greedy::FundamentalWeight& fundamental, bool phi_exact,
                                     double quasi_greedy);

/// Band of ||F(f)||_{1,r,w} / ||f|| over sampled f in the span, r in (1, inf].
RatioBand upper_embedding_check(const Basis& basis, double r, const seqreg::Weight& w,
                                const EmbeddingOptions& options);

struct LebesgueRow {
  std::size_t m = 0;
  double lebesgue = 0.0;   ///< lower bound for L_m
  double reference = 0.0;  ///< (log m)^{1/q - 1/r}
  double fitted = 0.0;     ///< C reference
  double delta_gap = 0.0;  ///< H_m[w]^{1/q - 1/r}
};

struct SqueezeReport {
  std::string basis;
  double q = 0.0;
  double r = 0.0;
  LowerEmbedding lower;
  RatioBand upper;
  std::vector<LebesgueRow> lebesgue;
  double fit_constant = 0.0;
};

struct SqueezeOptions {
  EmbeddingOptions embedding{};
  std::size_t lebesgue_samples = 64;
  std::size_t lebesgue_m_max = 32;  ///< capped at M
};

/// Requires 1 < q <= r <= inf.
SqueezeReport squeeze_report(const Basis& basis, double q, double r, const SqueezeOptions& options);

nlohmann::json to_json(const SqueezeReport& report);

struct GridCell {
  double q = 0.0;
  double r = 0.0;
  RatioBand lower;
  RatioBand upper;
};

/// Bands for every (q, r) with q <= r from the two lattices.
std::vector<GridCell> grid_sweep(const Basis& basis, std::span<const double> qs, std::span<const double> rs,
                                 const EmbeddingOptions& options);

}  // namespace squeeze::embeddings
