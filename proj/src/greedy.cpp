#include "squeeze/greedy.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "squeeze/errors.hpp"
#include "squeeze/numeric.hpp"
#include "squeeze/parallel.hpp"
#include "squeeze/rng.hpp"
#include "squeeze/sampling.hpp"

namespace squeeze::greedy {

namespace {

using Index = Eigen::Index;

constexpr std::size_t kChunk = 512;
constexpr std::size_t kProjectionRestarts = 64;
constexpr std::size_t kProjectionSteps = 40;

double binomial(std::size_t n, std::size_t k) {
  if (k > n) return 0.0;
  double out = 1.0;
  for (std::size_t i = 1; i <= k; ++i) out = out * static_cast<double>(n - k + i) / static_cast<double>(i);
  return std::round(out);
}

std::uint64_t binomial_u64(std::size_t n, std::size_t k) {
  if (k > n) return 0;
  std::uint64_t out = 1;
  for (std::size_t i = 1; i <= k; ++i) out = out * (n - k + i) / i;
  return out;
}

/// The r-th k-subset of {0, ..., n-1} in lexicographic order.
std::vector<std::size_t> unrank_combination(std::uint64_t r, std::size_t n, std::size_t k) {
  std::vector<std::size_t> out;
  out.reserve(k);
  std::size_t next = 0;
  for (std::size_t slot = 0; slot < k; ++slot) {
    for (std::size_t v = next;; ++v) {
      const std::uint64_t count = binomial_u64(n - v - 1, k - slot - 1);
      if (r < count) {
        out.push_back(v);
        next = v + 1;
        break;
      }
      r -= count;
    }
  }
  return out;
}

bool next_combination(std::vector<std::size_t>& c, std::size_t n) {
  const std::size_t k = c.size();
  for (std::size_t i = k; i-- > 0;) {
    if (c[i] < n - k + i) {
      ++c[i];
      for (std::size_t j = i + 1; j < k; ++j) c[j] = c[j - 1] + 1;
      return true;
    }
  }
  return false;
}

/// Calls fn(subset) for every k-subset of {0..n-1}, in parallel chunks, and
/// returns the per-chunk results in order.
template <class Fn>
auto for_each_subset(std::size_t n, std::size_t k, Fn fn) {
  const std::uint64_t total = binomial_u64(n, k);
  const std::size_t chunks = static_cast<std::size_t>((total + kChunk - 1) / kChunk);
  return parallel_map(chunks, [&](std::size_t c) {
    auto subset = unrank_combination(static_cast<std::uint64_t>(c) * kChunk, n, k);
    const std::uint64_t end = std::min<std::uint64_t>(total, static_cast<std::uint64_t>(c + 1) * kChunk);
    decltype(fn(subset)) acc{};
    bool first = true;
    for (std::uint64_t r = static_cast<std::uint64_t>(c) * kChunk; r < end; ++r) {
      auto value = fn(subset);
      acc = first ? value : acc.merge(value);
      first = false;
      next_combination(subset, n);
    }
    return acc;
  });
}

struct Extremes {
  double hi = 0.0;
  double lo = kInf;
  Extremes merge(const Extremes& o) const { return {std::max(hi, o.hi), std::min(lo, o.lo)}; }
};

/// Max and min of ||sum_{n in A} eps_n x_n|| over sign patterns with the
/// first sign fixed to +1 (the norm is even), visited in Gray-code order.
Extremes sign_extremes(const Basis& basis, std::span<const std::size_t> subset) {
  const std::size_t k = subset.size();
  Eigen::VectorXd v = Eigen::VectorXd::Zero(static_cast<Index>(basis.dim()));
  for (std::size_t n : subset) v += basis.vectors().col(static_cast<Index>(n));
  std::vector<double> eps(k, 1.0);
  Extremes out;
  const std::uint64_t patterns = std::uint64_t{1} << (k - 1);
  for (std::uint64_t g = 0; g < patterns; ++g) {
    if (g > 0) {
      const int bit = std::countr_zero(g);
      const std::size_t i = k - 1 - static_cast<std::size_t>(bit);
      v -= 2.0 * eps[i] * basis.vectors().col(static_cast<Index>(subset[i]));
      eps[i] = -eps[i];
    }
    const double value = basis.ambient()(v);
    out.hi = std::max(out.hi, value);
    out.lo = std::min(out.lo, value);
  }
  return out;
}

double exact_sign_cost(std::size_t M, std::size_t k_lo, std::size_t k_hi) {
  double cost = 0.0;
  for (std::size_t k = k_lo; k <= k_hi; ++k) cost += binomial(M, k) * std::ldexp(1.0, static_cast<int>(k) - 1);
  return cost;
}

/// Per-size extremes for sizes k_lo..k_hi (entry k - k_lo).
std::vector<Extremes> size_extremes(const Basis& basis, std::size_t k_lo, std::size_t k_hi,
                                    const EnumerationOptions& options) {
  const std::size_t M = basis.size();
  std::vector<Extremes> out;
  if (options.mode == Mode::exact) {
    const double cost = exact_sign_cost(M, k_lo, k_hi);
    if (cost > static_cast<double>(options.budget)) {
      throw BudgetExceeded("exact democracy enumeration needs " + std::to_string(static_cast<long double>(cost)) +
                           " norm evaluations, budget is " + std::to_string(options.budget));
    }
    for (std::size_t k = k_lo; k <= k_hi; ++k) {
      const auto chunks = for_each_subset(M, k, [&](const std::vector<std::size_t>& s) {
        return sign_extremes(basis, s);
      });
      Extremes e;
      for (const auto& c : chunks) e = e.merge(c);
      out.push_back(e);
    }
    return out;
  }

  const Rng root(options.seed, 0xDE30C);
  out = parallel_map(k_hi - k_lo + 1, [&](std::size_t idx) {
    const std::size_t k = k_lo + idx;
    Rng rng = root.derive(k);
    Extremes e;
    std::vector<std::size_t> subset(k);
    std::iota(subset.begin(), subset.end(), std::size_t{0});
    Eigen::VectorXd v(static_cast<Index>(basis.dim()));
    auto evaluate = [&](auto sign_of) {
      v.setZero();
      for (std::size_t i = 0; i < k; ++i) v += sign_of(i) * basis.vectors().col(static_cast<Index>(subset[i]));
      const double value = basis.ambient()(v);
      e.hi = std::max(e.hi, value);
      e.lo = std::min(e.lo, value);
    };
    evaluate([](std::size_t) { return 1.0; });
    evaluate([](std::size_t i) { return i % 2 == 0 ? 1.0 : -1.0; });
    std::vector<std::size_t> pool(M);
    for (std::size_t s = 0; s < options.samples; ++s) {
      std::iota(pool.begin(), pool.end(), std::size_t{0});
      for (std::size_t i = 0; i < k; ++i) std::swap(pool[i], pool[i + rng.below(M - i)]);
      std::copy(pool.begin(), pool.begin() + static_cast<std::ptrdiff_t>(k), subset.begin());
      std::sort(subset.begin(), subset.end());
      evaluate([&](std::size_t) { return rng.sign(); });
    }
    return e;
  });
  return out;
}

void require_m(std::size_t m, std::size_t M, const char* who) {
  if (m == 0 || m > M) {
    throw std::invalid_argument(std::string(who) + ": m must lie in [1, " + std::to_string(M) + "]");
  }
}

Eigen::MatrixXd projection_matrix(const Basis& basis, std::span<const std::size_t> subset) {
  const Index n = static_cast<Index>(basis.dim());
  Eigen::MatrixXd vs(n, static_cast<Index>(subset.size()));
  Eigen::MatrixXd ds(n, static_cast<Index>(subset.size()));
  for (std::size_t i = 0; i < subset.size(); ++i) {
    vs.col(static_cast<Index>(i)) = basis.vectors().col(static_cast<Index>(subset[i]));
    ds.col(static_cast<Index>(i)) = basis.duals().col(static_cast<Index>(subset[i]));
  }
  return vs * ds.transpose();
}

bool is_hilbert(const NormOracle& norm) { return norm.p() && *norm.p() == 2.0; }

}  // namespace

double exact_enumeration_cost(std::size_t M, std::size_t k_max) { return exact_sign_cost(M, 1, k_max); }

EnumerationOptions auto_options(std::size_t M, std::size_t k_max, std::size_t budget, std::size_t samples,
                                std::uint64_t seed) {
  EnumerationOptions o;
  o.mode = exact_enumeration_cost(M, k_max) <= static_cast<double>(budget) ? Mode::exact : Mode::sampled;
  o.samples = samples;
  o.budget = budget;
  o.seed = seed;
  return o;
}

std::vector<double> coefficient_transform(std::span<const double> f, const Basis& basis) {
  if (f.size() != basis.dim()) {
    throw std::invalid_argument("coefficient_transform: expected a vector of dimension " +
                                std::to_string(basis.dim()));
  }
  const Eigen::Map<const Eigen::VectorXd> fv(f.data(), static_cast<Index>(f.size()));
  const Eigen::VectorXd c = basis.duals().transpose() * fv;
  return {c.data(), c.data() + c.size()};
}

std::vector<std::size_t> greedy_ordering(std::span<const double> coeffs) {
  std::vector<std::size_t> order(coeffs.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return std::abs(coeffs[a]) > std::abs(coeffs[b]);
  });
  return order;
}

Eigen::VectorXd greedy_approximant(std::span<const double> coeffs, const Basis& basis, std::size_t m) {
  if (coeffs.size() != basis.size()) throw std::invalid_argument("greedy_approximant: coefficient count mismatch");
  if (m > basis.size()) throw std::invalid_argument("greedy_step: m exceeds the number of basis vectors");
  const auto order = greedy_ordering(coeffs);
  Eigen::VectorXd g = Eigen::VectorXd::Zero(static_cast<Index>(basis.dim()));
  for (std::size_t i = 0; i < m; ++i) {
    g += coeffs[order[i]] * basis.vectors().col(static_cast<Index>(order[i]));
  }
  return g;
}

Eigen::VectorXd greedy_step(std::span<const double> f, const Basis& basis, std::size_t m) {
  const auto coeffs = coefficient_transform(f, basis);
  return greedy_approximant(coeffs, basis, m);
}

QuasiGreedyEstimate quasi_greedy_constant(const Basis& basis, std::size_t samples, std::uint64_t seed) {
  if (samples == 0) throw std::invalid_argument("quasi_greedy_constant: samples must be >= 1");
  const std::size_t M = basis.size();
  const auto results = parallel_map(samples, [&](std::size_t i) {
    QuasiGreedyEstimate est;
    est.value = 0.0;
    const auto a = sweep_sample(i, M, seed);
    const Eigen::VectorXd f = basis.synthesize(a);
    const double nf = basis.ambient()(f);
    if (nf == 0.0) return est;
    const auto order = greedy_ordering(a);
    Eigen::VectorXd g = Eigen::VectorXd::Zero(f.size());
    for (std::size_t m = 1; m <= M; ++m) {
      g += a[order[m - 1]] * basis.vectors().col(static_cast<Index>(order[m - 1]));
      const Eigen::VectorXd rest = f - g;
      const double ratio = std::max(basis.ambient()(rest), basis.ambient()(g)) / nf;
      if (ratio > est.value) {
        est.value = ratio;
        est.m = m;
      }
    }
    est.witness = a;
    return est;
  });
  QuasiGreedyEstimate best;
  best.value = 0.0;
  for (const auto& r : results) {
    if (r.value > best.value) best = r;
  }
  return best;
}

std::vector<double> phi_upper(const Basis& basis, std::size_t m_max, const EnumerationOptions& options) {
  require_m(m_max, basis.size(), "phi_upper");
  const auto ext = size_extremes(basis, 1, m_max, options);
  std::vector<double> out(m_max);
  double running = 0.0;
  for (std::size_t m = 1; m <= m_max; ++m) {
    running = std::max(running, ext[m - 1].hi);
    out[m - 1] = running;
  }
  return out;
}

std::vector<double> phi_lower(const Basis& basis, std::size_t m_max, const EnumerationOptions& options) {
  const std::size_t M = basis.size();
  require_m(m_max, M, "phi_lower");
  const auto ext = size_extremes(basis, 1, M, options);
  std::vector<double> suffix_min(M + 1, kInf);
  for (std::size_t k = M; k >= 1; --k) suffix_min[k - 1] = std::min(suffix_min[k], ext[k - 1].lo);
  return {suffix_min.begin(), suffix_min.begin() + static_cast<std::ptrdiff_t>(m_max)};
}

double super_democracy_upper(const Basis& basis, std::size_t m, const EnumerationOptions& options) {
  return phi_upper(basis, m, options).back();
}

double super_democracy_lower(const Basis& basis, std::size_t m, const EnumerationOptions& options) {
  return phi_lower(basis, m, options).back();
}

double spectral_norm(const Eigen::MatrixXd& a) {
  if (a.size() == 0) return 0.0;
  Rng rng(0x5BEC7A1ULL);
  Eigen::VectorXd x(a.cols());
  for (Index i = 0; i < x.size(); ++i) x[i] = 1.0 + 0.5 * rng.normal();
  x.normalize();
  const Eigen::MatrixXd ata = a.transpose() * a;
  double lambda = 0.0;
  for (int it = 0; it < 200000; ++it) {
    Eigen::VectorXd y = ata * x;
    const double norm = y.norm();
    if (norm == 0.0) return 0.0;
    lambda = x.dot(y);
    const double residual = (y - lambda * x).norm();
    x = y / norm;
    if (residual <= 1e-13 * norm) break;
  }
  return std::sqrt(std::max(lambda, 0.0));
}

double projection_norm(const Basis& basis, std::span<const std::size_t> subset, std::uint64_t seed) {
  if (subset.empty()) return 0.0;
  const Eigen::MatrixXd s = projection_matrix(basis, subset);
  if (is_hilbert(basis.ambient())) return spectral_norm(s);

  const auto& norm = basis.ambient();
  const Index n = s.rows();
  auto ratio = [&](const Eigen::VectorXd& f) {
    const double nf = norm(f);
    return nf == 0.0 ? 0.0 : norm(Eigen::VectorXd(s * f)) / nf;
  };
  const Rng root(seed, 0x9A0E);
  double best = 0.0;
  for (std::size_t r = 0; r < kProjectionRestarts; ++r) {
    Rng rng = root.derive(r);
    Eigen::VectorXd f(n);
    if (r < subset.size()) {
      f = basis.vector(subset[r]);
    } else if (r == subset.size()) {
      f = s.rowwise().sum().cwiseSign();
    } else {
      for (Index i = 0; i < n; ++i) f[i] = rng.normal();
    }
    double value = ratio(f);
    double step = 0.3;
    for (std::size_t t = 0; t < kProjectionSteps; ++t) {
      const double scale = f.cwiseAbs().maxCoeff();
      Eigen::VectorXd cand(n);
      for (Index i = 0; i < n; ++i) cand[i] = f[i] + step * scale * rng.normal();
      const double trial = ratio(cand);
      if (trial > value) {
        value = trial;
        f = cand;
        step *= 1.3;
      } else {
        step *= 0.8;
      }
    }
    best = std::max(best, value);
  }
  return best;
}

std::vector<double> conditionality_table(const Basis& basis, std::size_t m_max,
                                         const EnumerationOptions& options) {
  const std::size_t M = basis.size();
  require_m(m_max, M, "conditionality_table");
  const double per_subset = is_hilbert(basis.ambient()) ? 1.0
                                                         : static_cast<double>(kProjectionRestarts * kProjectionSteps);
  double subsets = 0.0;
  for (std::size_t k = 1; k <= m_max; ++k) subsets += binomial(M, k);
  const bool exact = options.mode == Mode::exact && subsets * per_subset <= static_cast<double>(options.budget);

  struct Max {
    double value = 0.0;
    Max merge(const Max& o) const { return {std::max(value, o.value)}; }
  };
  std::vector<double> per_size(m_max, 0.0);
  if (exact) {
    for (std::size_t k = 1; k <= m_max; ++k) {
      const auto chunks = for_each_subset(M, k, [&](const std::vector<std::size_t>& s) {
        return Max{projection_norm(basis, s, options.seed)};
      });
      for (const auto& c : chunks) per_size[k - 1] = std::max(per_size[k - 1], c.value);
    }
  } else {
    const Rng root(options.seed, 0xC0DD);
    per_size = parallel_map(m_max, [&](std::size_t idx) {
      const std::size_t k = idx + 1;
      Rng rng = root.derive(k);
      std::vector<std::size_t> pool(M), subset(k);
      double best = 0.0;
      for (std::size_t s = 0; s < options.samples; ++s) {
        std::iota(pool.begin(), pool.end(), std::size_t{0});
        for (std::size_t i = 0; i < k; ++i) std::swap(pool[i], pool[i + rng.below(M - i)]);
        std::copy(pool.begin(), pool.begin() + static_cast<std::ptrdiff_t>(k), subset.begin());
        std::sort(subset.begin(), subset.end());
        best = std::max(best, projection_norm(basis, subset, options.seed));
      }
      return best;
    });
  }
  std::vector<double> out(m_max);
  double running = 0.0;
  for (std::size_t m = 0; m < m_max; ++m) {
    running = std::max(running, per_size[m]);
    out[m] = running;
  }
  return out;
}

double conditionality_constant(const Basis& basis, std::size_t m, const EnumerationOptions& options) {
  return conditionality_table(basis, m, options).back();
}

std::vector<double> lebesgue_table(const Basis& basis, std::size_t m_max, std::size_t samples,
                                   std::uint64_t seed) {
  const std::size_t M = basis.size();
  require_m(m_max, M, "lebesgue_table");
  if (samples == 0) throw std::invalid_argument("lebesgue_table: samples must be >= 1");
  const auto& norm = basis.ambient();
  const bool hilbert = is_hilbert(norm);
  const Rng root(seed, 0x1EBE5);

  const auto rows = parallel_map(samples, [&](std::size_t i) {
    std::vector<double> best(m_max, 1.0);
    const auto a = sweep_sample(i, M, seed);
    const Eigen::VectorXd f = basis.synthesize(a);
    const auto order = greedy_ordering(a);
    Rng rng = root.derive(i);

    auto residual_for = [&](const std::vector<std::size_t>& support) -> double {
      if (hilbert) {
        Eigen::MatrixXd vs(f.size(), static_cast<Index>(support.size()));
        for (std::size_t j = 0; j < support.size(); ++j) {
          vs.col(static_cast<Index>(j)) = basis.vectors().col(static_cast<Index>(support[j]));
        }
        const Eigen::VectorXd c = vs.colPivHouseholderQr().solve(f);
        return norm(Eigen::VectorXd(f - vs * c));
      }
      Eigen::VectorXd g = Eigen::VectorXd::Zero(f.size());
      for (std::size_t n : support) g += a[n] * basis.vectors().col(static_cast<Index>(n));
      return norm(Eigen::VectorXd(f - g));
    };

    Eigen::VectorXd g = Eigen::VectorXd::Zero(f.size());
    const double nf = norm(f);
    std::vector<std::size_t> pool(M);
    for (std::size_t m = 1; m <= m_max; ++m) {
      g += a[order[m - 1]] * basis.vectors().col(static_cast<Index>(order[m - 1]));
      const double numer = norm(Eigen::VectorXd(f - g));
      if (numer == 0.0) continue;
      double ratio = nf == 0.0 ? 1.0 : numer / nf;

      std::vector<std::size_t> greedy_support(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(m));
      std::vector<std::vector<std::size_t>> supports{greedy_support};
      if (m < M) {
        auto swapped = greedy_support;
        swapped[rng.below(m)] = order[m + rng.below(M - m)];
        supports.push_back(std::move(swapped));
      }
      for (int r = 0; r < 2; ++r) {
        std::iota(pool.begin(), pool.end(), std::size_t{0});
        for (std::size_t j = 0; j < m; ++j) std::swap(pool[j], pool[j + rng.below(M - j)]);
        supports.emplace_back(pool.begin(), pool.begin() + static_cast<std::ptrdiff_t>(m));
      }
      for (auto& s : supports) {
        std::sort(s.begin(), s.end());
        const double denom = residual_for(s);
        if (denom > 0.0) ratio = std::max(ratio, numer / denom);
      }
      best[m - 1] = std::max(best[m - 1], ratio);
    }
    return best;
  });

  std::vector<double> out(m_max, 1.0);
  for (const auto& row : rows) {
    for (std::size_t m = 0; m < m_max; ++m) out[m] = std::max(out[m], row[m]);
  }
  for (std::size_t m = 1; m < m_max; ++m) out[m] = std::max(out[m], out[m - 1]);
  return out;
}

double lebesgue_constant_lower(const Basis& basis, std::size_t m, std::size_t samples, std::uint64_t seed) {
  return lebesgue_table(basis, m, samples, seed).back();
}

FundamentalWeight weight_from_fundamental(const Basis& basis, std::size_t m_max,
                                          const EnumerationOptions& options) {
  auto phi = phi_upper(basis, m_max, options);
  std::vector<double> w(m_max);
  std::vector<std::size_t> degenerate;
  for (std::size_t n = 1; n <= m_max; ++n) {
    const double prev = n == 1 ? 0.0 : phi[n - 2];
    w[n - 1] = phi[n - 1] - prev;
    if (!(w[n - 1] > 0.0)) {
      degenerate.push_back(n);
      w[n - 1] = std::max(w[n - 1], 0.0);
    }
  }
  if (!(w[0] > 0.0)) throw InvariantViolation("weight_from_fundamental: phi_u(1) is zero");
  return {seqreg::Weight(w), std::move(phi), std::move(degenerate)};
}

Basis dual_basis(const Basis& basis, bool allow_estimate) {
  std::optional<NormOracle> ambient = basis.dual_ambient();
  if (!ambient) ambient = basis.ambient().dual();
  if (!ambient) {
    if (!allow_estimate) {
      throw std::invalid_argument("dual_basis: no dual norm known for '" + basis.ambient().name() + "'");
    }
    ambient = NormOracle::estimated_dual(basis.ambient());
  }
  return Basis("dual(" + basis.name() + ")", basis.duals(), basis.vectors(), *ambient, basis.ambient());
}

std::vector<double> bidemocracy_table(const Basis& basis, std::size_t m_max, const EnumerationOptions& options) {
  const auto primal = phi_upper(basis, m_max, options);
  const auto dual = phi_upper(dual_basis(basis), m_max, options);
  std::vector<double> out(m_max);
  for (std::size_t m = 1; m <= m_max; ++m) out[m - 1] = primal[m - 1] * dual[m - 1] / static_cast<double>(m);
  return out;
}

double bidemocracy_ratio(const Basis& basis, std::size_t m, const EnumerationOptions& options) {
  return bidemocracy_table(basis, m, options).back();
}

}  // namespace squeeze::greedy
