#include "squeeze/convexity.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>

#include "squeeze/errors.hpp"
#include "squeeze/numeric.hpp"
#include "squeeze/parallel.hpp"
#include "squeeze/rng.hpp"

namespace squeeze::convexity {

namespace {

constexpr std::size_t kBisectionSteps = 40;
// Two normalizations, two evaluations per bisection step, one final sum.
constexpr std::size_t kCandidateCost = 2 + 2 * kBisectionSteps + 1;

double inner_norm(const NormOracle& norm, const Vector& v) { return norm(std::span<const double>(v)); }

void normalize(Vector& v, double n) {
  for (double& x : v) x /= n;
}

struct Candidate {
  double value = kInf;
  Vector f;
  Vector g;
};

/// Evaluates one (f, d) proposal: both are normalized, then g is located on
/// the arc f -> d -> -f where ||f - g|| first reaches eps.
Candidate evaluate_pair(const NormOracle& norm, const Vector& f_raw, const Vector& d_raw, double eps) {
  Candidate out;
  const double nf = inner_norm(norm, f_raw);
  const double nd = inner_norm(norm, d_raw);
  if (nf == 0.0 || nd == 0.0) return out;
  Vector f = f_raw;
  Vector d = d_raw;
  normalize(f, nf);
  normalize(d, nd);

  const std::size_t n = f.size();
  Vector v(n), diff(n);
  auto point = [&](double t, Vector& g) {
    const double a = t <= 0.5 ? 1.0 - 2.0 * t : -(2.0 * t - 1.0);
    const double b = t <= 0.5 ? 2.0 * t : 2.0 - 2.0 * t;
    for (std::size_t i = 0; i < n; ++i) g[i] = a * f[i] + b * d[i];
    const double ng = inner_norm(norm, g);
    if (ng == 0.0) return false;
    normalize(g, ng);
    return true;
  };
  auto separation = [&](const Vector& g) {
    for (std::size_t i = 0; i < n; ++i) diff[i] = f[i] - g[i];
    return inner_norm(norm, diff);
  };

  double lo = 0.0;
  double hi = 1.0;
  for (std::size_t s = 0; s < kBisectionSteps; ++s) {
    const double mid = 0.5 * (lo + hi);
    if (!point(mid, v)) return out;
    if (separation(v) >= eps) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  Vector g(n);
  if (hi == 1.0) {
    for (std::size_t i = 0; i < n; ++i) g[i] = -f[i];
  } else if (!point(hi, g)) {
    return out;
  }
  if (separation(g) < eps) return out;
  for (std::size_t i = 0; i < n; ++i) diff[i] = f[i] + g[i];
  out.value = 1.0 - inner_norm(norm, diff) / 2.0;
  out.f = std::move(f);
  out.g = std::move(g);
  return out;
}

/// One restart of the local search, stopping when its allowance of norm
/// evaluations cannot pay for another candidate.
Candidate run_restart(const NormOracle& norm, double eps, std::size_t allowance, Rng rng,
                      std::size_t& spent) {
  const std::size_t n = norm.dim();
  Candidate best;
  spent = 0;
  if (allowance < kCandidateCost) return best;

  Vector f(n), d(n);
  for (std::size_t i = 0; i < n; ++i) {
    f[i] = rng.normal();
    d[i] = rng.normal();
  }
  Candidate current = evaluate_pair(norm, f, d, eps);
  spent += kCandidateCost;
  best = current;
  Vector cf(n), cd(n);
  double step = 0.3;
  while (spent + kCandidateCost <= allowance) {
    for (std::size_t i = 0; i < n; ++i) {
      cf[i] = f[i] + step * rng.normal();
      cd[i] = d[i] + step * rng.normal();
    }
    Candidate trial = evaluate_pair(norm, cf, cd, eps);
    spent += kCandidateCost;
    if (trial.value < current.value) {
      current = std::move(trial);
      f.swap(cf);
      d.swap(cd);
      step = std::min(1.0, step * 1.3);
    } else {
      step = std::max(1e-5, step * 0.8);
    }
    if (current.value < best.value) best = current;
  }
  return best;
}

}  // namespace

double hilbert_modulus(double eps) { return 1.0 - std::sqrt(1.0 - eps * eps / 4.0); }

ModulusEstimate modulus_estimate(const NormOracle& norm, double eps, std::size_t budget,
                                 std::uint64_t seed) {
  if (!(eps >= 0.0 && eps <= 2.0)) throw std::invalid_argument("modulus_estimate: eps must lie in [0, 2]");
  const std::size_t n = norm.dim();
  ModulusEstimate out;
  out.eps = eps;
  out.f.assign(n, 0.0);
  out.f[0] = 1.0;
  if (eps == 0.0) {
    out.g = out.f;
    out.estimate = 0.0;
    return out;
  }
  const double unit = norm(out.f);
  normalize(out.f, unit);
  out.g = out.f;
  for (double& x : out.g) x = -x;
  out.estimate = 1.0;

  const std::size_t restarts = (budget + kRestartLength - 1) / kRestartLength;
  const Rng root(seed, 0xC0417E);
  struct Outcome {
    Candidate best;
    std::size_t spent = 0;
  };
  const auto outcomes = parallel_map(restarts, [&](std::size_t r) {
    Outcome o;
    const std::size_t allowance = std::min(kRestartLength, budget - r * kRestartLength);
    o.best = run_restart(norm, eps, allowance, root.derive(r), o.spent);
    return o;
  });
  out.evaluations = 1;
  for (const auto& o : outcomes) {
    out.evaluations += o.spent;
    if (o.best.value < out.estimate) {
      out.estimate = o.best.value;
      out.f = o.best.f;
      out.g = o.best.g;
    }
  }
  return out;
}

ConvexityConstants qlaw_constants(double delta, QPolicy policy, double eps) {
  if (!(delta > 0.0 && delta <= 1.0)) throw std::invalid_argument("qlaw_constants: delta must lie in (0, 1]");
  if (!(policy.fraction > 0.0 && policy.fraction < 1.0)) {
    throw std::invalid_argument("qlaw_constants: policy fraction must lie in (0, 1)");
  }
  if (!(policy.q_when_lambda_le_one > 1.0)) {
    throw std::invalid_argument("qlaw_constants: q for lambda <= 1 must be > 1");
  }
  ConvexityConstants c;
  c.eps = eps;
  c.delta = delta;
  c.lambda = 2.0 * (1.0 - delta);
  if (c.lambda <= 1.0) {
    c.q = policy.q_when_lambda_le_one;
    c.eta = 1.0;
  } else {
    const double log_lambda = std::log(c.lambda);
    const double upper = std::log(2.0) / log_lambda;
    c.q = 1.0 + policy.fraction * (upper - 1.0);
    const double excess = std::expm1(c.q * log_lambda);
    c.eta = -std::expm1(std::log(excess) / c.q);
    if (!(std::pow(c.lambda, c.q) < 2.0) || !(c.eta > 0.0 && c.eta < 1.0)) {
      throw InvariantViolation("qlaw_constants: derived constants out of range");
    }
  }
  c.K = 2.0 / c.eta;
  return c;
}

ConvexityConstants constants_for(const NormOracle& norm, double eps, std::size_t budget,
                                 std::uint64_t seed, QPolicy policy) {
  const auto m = modulus_estimate(norm, eps, budget, seed);
  return qlaw_constants(m.estimate, policy, eps);
}

QLawVerdict verify_qlaw(std::span<const double> f, std::span<const double> g, const NormOracle& norm,
                        const ConvexityConstants& c) {
  if (std::isnan(c.eps)) throw std::invalid_argument("verify_qlaw: constants carry no eps");
  QLawVerdict out;
  const double nf = norm(f);
  const double ng = norm(g);
  const double big = std::max(nf, ng);
  const double small = std::min(nf, ng);
  if (big == 0.0) return out;
  Vector diff(f.size()), sum(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) {
    diff[i] = f[i] - g[i];
    sum[i] = f[i] + g[i];
  }
  if (small < (1.0 - c.eta) * big || norm(diff) < c.eps * big) return out;
  out.lhs = std::pow(norm(sum), c.q);
  out.rhs = std::pow(nf, c.q) + std::pow(ng, c.q);
  out.verdict = leq_tol(out.lhs, out.rhs) ? Verdict::holds : Verdict::violated;
  return out;
}

SplitPoint split_point(std::span<const Vector> fs, const NormOracle& norm) {
  if (fs.empty()) throw std::invalid_argument("split_point: empty family");
  const std::size_t m = fs.size();
  const std::size_t n = norm.dim();
  SplitPoint out;

  std::vector<double> prefix_norm(m + 1), suffix_norm(m + 1);
  Vector acc(n, 0.0);
  prefix_norm[0] = 0.0;
  for (std::size_t k = 1; k <= m; ++k) {
    for (std::size_t i = 0; i < n; ++i) acc[i] += fs[k - 1][i];
    prefix_norm[k] = inner_norm(norm, acc);
    out.bound = std::max(out.bound, norm(fs[k - 1]));
  }
  std::fill(acc.begin(), acc.end(), 0.0);
  suffix_norm[m] = 0.0;
  for (std::size_t k = m; k-- > 0;) {
    for (std::size_t i = 0; i < n; ++i) acc[i] += fs[k][i];
    suffix_norm[k] = inner_norm(norm, acc);
  }

  auto gap = [&](std::size_t k) { return prefix_norm[k] - suffix_norm[k]; };
  std::size_t k = 0;
  for (std::size_t j = 0; j <= m; ++j) {
    if (gap(j) <= 0.0) k = j;
  }
  if (k == m) {
    out.k = 0;
  } else {
    out.k = std::abs(gap(k + 1)) < std::abs(gap(k)) ? k + 1 : k;
  }
  out.a_k = std::abs(gap(out.k));
  return out;
}

SumBoundReport summation_bound_check(std::span<const Vector> fs, const NormOracle& norm, double C,
                                     const ConvexityConstants& c, SumBoundOptions options) {
  if (fs.empty()) throw std::invalid_argument("summation_bound_check: empty family");
  if (!(C > 0.0)) throw std::invalid_argument("summation_bound_check: C must be > 0");
  const std::size_t M = fs.size();
  const std::size_t n = norm.dim();
  SumBoundReport out;
  out.K = c.K;
  out.q = c.q;

  std::vector<Vector> partial(M + 1, Vector(n, 0.0));
  for (std::size_t k = 1; k <= M; ++k) {
    for (std::size_t i = 0; i < n; ++i) partial[k][i] = partial[k - 1][i] + fs[k - 1][i];
  }

  Vector block(n), signed_sum(n);
  auto check_triple = [&](std::size_t j, std::size_t k, std::size_t m) {
    for (std::size_t i = 0; i < n; ++i) {
      block[i] = partial[k][i] - partial[j - 1][i];
      signed_sum[i] = block[i] - (partial[m][i] - partial[k][i]);
    }
    const double lhs = inner_norm(norm, block);
    const double rhs = inner_norm(norm, signed_sum);
    ++out.triples_checked;
    if (lhs == 0.0) return;
    const double ratio = rhs == 0.0 ? kInf : lhs / rhs;
    out.worst_condition_ratio = std::max(out.worst_condition_ratio, ratio);
    if (!leq_tol(lhs, C * rhs)) out.condition_holds = false;
  };

  if (M <= options.exhaustive_limit) {
    for (std::size_t j = 1; j <= M; ++j) {
      for (std::size_t k = j; k <= M; ++k) {
        for (std::size_t m = k; m <= M; ++m) check_triple(j, k, m);
      }
    }
  } else {
    out.exhaustive = false;
    Rng rng(options.seed, 0x5B0C);
    for (std::size_t t = 0; t < options.random_triples; ++t) {
      std::array<std::size_t, 3> idx{};
      for (auto& v : idx) v = 1 + static_cast<std::size_t>(rng.below(M));
      std::sort(idx.begin(), idx.end());
      check_triple(idx[0], idx[1], idx[2]);
    }
  }

  CompensatedSum powered;
  for (const auto& f : fs) powered.add(std::pow(norm(f), c.q));
  const double denom = std::pow(powered.value(), 1.0 / c.q);
  out.ratio = denom == 0.0 ? 0.0 : inner_norm(norm, partial[M]) / denom;
  out.bound_holds = leq_tol(out.ratio, out.K);
  return out;
}

double remark_ratio(double s, double q) {
  return std::sqrt(s * s + s) / (std::sqrt(2.0) * std::pow(s, 1.0 / q));
}

RemarkValue remark_counterexample(std::size_t j, std::size_t m, double q) {
  if (j == 0 || j > m) throw std::invalid_argument("remark_counterexample: need 1 <= j <= m");
  if (!(q > 0.0)) throw std::invalid_argument("remark_counterexample: q must be > 0");
  Vector sum(m + 1, 0.0);
  for (std::size_t n = j; n <= m; ++n) {
    sum[0] += 1.0;
    sum[n] += 1.0;
  }
  const double s = static_cast<double>(m - j + 1);
  RemarkValue out;
  out.norm_value = lp_norm(sum, 2.0);
  out.closed_form = std::sqrt(s * s + s);
  out.ratio = remark_ratio(s, q);
  return out;
}

std::vector<double> remark_norm_table(std::size_t m) {
  if (m == 0) throw std::invalid_argument("remark_norm_table: m must be >= 1");
  std::vector<double> out(m);
  Vector sum(m + 1, 0.0);
  CompensatedSum tail_squares;
  for (std::size_t j = m; j >= 1; --j) {
    const double before = sum[j];
    sum[0] += 1.0;
    sum[j] += 1.0;
    tail_squares.add(sum[j] * sum[j] - before * before);
    out[j - 1] = std::sqrt(sum[0] * sum[0] + tail_squares.value());
  }
  return out;
}

}  // namespace squeeze::convexity
