#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "squeeze/convexity.hpp"

using namespace squeeze;
using namespace squeeze::convexity;

namespace {

std::function<double(const oracle::Vec&)> lp_oracle(double p) {
  return [p](const oracle::Vec& x) { return static_cast<double>(oracle::lp(x, p)); };
}

std::vector<Vector> random_family(std::mt19937_64& gen, std::size_t m, std::size_t dim) {
  std::normal_distribution<double> g;
  std::uniform_real_distribution<double> scale(0.01, 3.0);
  std::vector<Vector> fs(m, Vector(dim));
  for (auto& f : fs) {
    const double s = scale(gen);
    for (auto& v : f) v = s * g(gen);
  }
  return fs;
}

}  // namespace

TEST_CASE("modulus of Hilbert space") {
  const auto l2 = NormOracle::lp(2.0, 8);
  for (double eps : {0.25, 0.5, 1.0, 1.5}) {
    const auto m = modulus_estimate(l2, eps, 400'000, 1);
    CHECK(m.estimate >= hilbert_modulus(eps) - 1e-12);
    CHECK(m.estimate == doctest::Approx(hilbert_modulus(eps)).epsilon(1e-4));
    CHECK(m.evaluations <= 400'000);
    // the witness is admissible
    Vector diff(8), sum(8);
    for (std::size_t i = 0; i < 8; ++i) {
      diff[i] = m.f[i] - m.g[i];
      sum[i] = m.f[i] + m.g[i];
    }
    CHECK(l2(m.f) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(l2(m.g) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(l2(diff) >= eps - 1e-12);
    CHECK(1.0 - l2(sum) / 2.0 == doctest::Approx(m.estimate).epsilon(1e-12));
  }
  CHECK(hilbert_modulus(0.5) == doctest::Approx(1.0 - std::sqrt(1.0 - 0.0625)).epsilon(1e-15));
}

TEST_CASE("modulus of ell_4 against Clarkson") {
  const auto l4 = NormOracle::lp(4.0, 6);
  for (double eps : {0.5, 1.0}) {
    const auto m = modulus_estimate(l4, eps, 400'000, 2);
    CHECK(m.estimate >= oracle::clarkson_modulus(eps, 4.0) - 1e-12);
    CHECK(m.estimate <= oracle::clarkson_modulus(eps, 4.0) + 5e-3);
  }
}

TEST_CASE("modulus of ell_infinity collapses") {
  const auto linf = NormOracle::lp(kInf, 4);
  CHECK(modulus_estimate(linf, 0.5, 100'000).estimate <= 1e-9);
}

TEST_CASE("modulus estimate is monotone in the budget and validates eps") {
  const auto l3 = NormOracle::lp(3.0, 5);
  double previous = 2.0;
  for (std::size_t budget : {100u, 1000u, 5000u, 20000u, 60000u}) {
    const double e = modulus_estimate(l3, 0.7, budget, 9).estimate;
    CHECK(e <= previous);
    previous = e;
  }
  CHECK(modulus_estimate(l3, 0.0, 1000).estimate == 0.0);
  CHECK_THROWS_AS(modulus_estimate(l3, 2.5, 1000), std::invalid_argument);
  CHECK_THROWS_AS(modulus_estimate(l3, -0.1, 1000), std::invalid_argument);
}

TEST_CASE("q-law constants") {
  const double delta = hilbert_modulus(0.5);
  const auto c = qlaw_constants(delta, {}, 0.5);
  const long double lambda = 2.0L * (1.0L - delta);
  const long double top = std::log(2.0L) / std::log(lambda);
  const long double q = 1.0L + 0.5L * (top - 1.0L);
  const long double eta = 1.0L - std::pow(std::pow(lambda, q) - 1.0L, 1.0L / q);
  CHECK(c.lambda == doctest::Approx(static_cast<double>(lambda)).epsilon(1e-15));
  CHECK(c.q == doctest::Approx(static_cast<double>(q)).epsilon(1e-13));
  CHECK(c.eta == doctest::Approx(static_cast<double>(eta)).epsilon(1e-10));
  CHECK(c.K == doctest::Approx(2.0 / static_cast<double>(eta)).epsilon(1e-10));
  CHECK(std::pow(c.lambda, c.q) < 2.0);
  CHECK(std::pow(1.0 - c.eta, c.q) + 1.0 == doctest::Approx(std::pow(c.lambda, c.q)).epsilon(1e-12));

  const auto flat = qlaw_constants(0.6);
  CHECK(flat.lambda == doctest::Approx(0.8));
  CHECK(flat.q == 2.0);
  CHECK(flat.eta == 1.0);
  CHECK(flat.K == 2.0);

  CHECK_THROWS_AS(qlaw_constants(0.0), std::invalid_argument);
  CHECK_THROWS_AS(qlaw_constants(1.5), std::invalid_argument);
  CHECK_THROWS_AS(qlaw_constants(0.1, QPolicy{1.0, 2.0}), std::invalid_argument);
}

TEST_CASE("q-law verdicts") {
  const auto l2 = NormOracle::lp(2.0, 16);
  const auto c = qlaw_constants(hilbert_modulus(0.5), {}, 0.5);
  std::mt19937_64 gen(4);
  std::normal_distribution<double> g;
  std::uniform_real_distribution<double> shrink(0.0, 1.0);
  int applicable = 0;
  for (int trial = 0; trial < 2000; ++trial) {
    Vector f(16), h(16);
    for (auto& v : f) v = g(gen);
    for (auto& v : h) v = g(gen);
    const double scale = l2(f) / l2(h) * (1.0 - c.eta * shrink(gen));
    for (auto& v : h) v *= scale;
    const auto verdict = verify_qlaw(f, h, l2, c);
    if (verdict.verdict == Verdict::not_applicable) continue;
    ++applicable;
    CHECK(verdict.verdict == Verdict::holds);
    CHECK(verdict.lhs <= verdict.rhs * (1.0 + 1e-10));
  }
  CHECK(applicable > 1900);

  Vector f(16, 0.0), h(16, 0.0);
  f[0] = 1.0;
  h[1] = 0.1;
  CHECK(verify_qlaw(f, h, l2, c).verdict == Verdict::not_applicable);
  CHECK(verify_qlaw(f, f, l2, c).verdict == Verdict::not_applicable);
  CHECK_THROWS_AS(verify_qlaw(f, h, l2, qlaw_constants(0.1)), std::invalid_argument);
}

TEST_CASE("split point against a full scan") {
  std::mt19937_64 gen(21);
  for (double p : {2.0, 4.0, 1.0}) {
    const auto norm = NormOracle::lp(p, 12);
    for (int trial = 0; trial < 300; ++trial) {
      const auto fs = random_family(gen, 1 + gen() % 15, 12);
      const auto s = split_point(fs, norm);
      double bound = 0.0;
      for (const auto& f : fs) bound = std::max(bound, norm(f));
      CHECK(s.bound == bound);
      CHECK(s.a_k <= bound);
      CHECK(s.k <= fs.size());
      CHECK(oracle::best_split_gap(fs, lp_oracle(p)) <= bound * (1.0 + 1e-12));
      // a_k is the gap of the returned split
      Vector head(12, 0.0), tail(12, 0.0);
      for (std::size_t n = 0; n < fs.size(); ++n) {
        for (std::size_t d = 0; d < 12; ++d) (n < s.k ? head : tail)[d] += fs[n][d];
      }
      CHECK(s.a_k == doctest::Approx(std::abs(norm(head) - norm(tail))).epsilon(1e-12));
    }
  }
  CHECK_THROWS_AS(split_point(std::vector<Vector>{}, NormOracle::lp(2.0, 3)), std::invalid_argument);
}

TEST_CASE("summation bound on orthogonal families") {
  const auto l2 = NormOracle::lp(2.0, 10);
  std::vector<Vector> fs;
  for (std::size_t n = 0; n < 10; ++n) {
    Vector f(10, 0.0);
    f[n] = 1.0 + 0.1 * double(n);
    fs.push_back(f);
  }
  const auto c = qlaw_constants(hilbert_modulus(0.5), {}, 0.5);
  const auto r = summation_bound_check(fs, l2, 1.0, c);
  CHECK(r.exhaustive);
  CHECK(r.triples_checked == 10 * 11 * 12 / 6);
  CHECK(r.condition_holds);
  CHECK(r.worst_condition_ratio <= 1.0 + 1e-12);
  CHECK(r.bound_holds);
  CHECK(r.K == c.K);

  SumBoundOptions sampled;
  sampled.exhaustive_limit = 4;
  sampled.random_triples = 500;
  const auto rs = summation_bound_check(fs, l2, 1.0, c, sampled);
  CHECK_FALSE(rs.exhaustive);
  CHECK(rs.triples_checked == 500);

  // (f, f): the head minus the tail vanishes at k = 1.
  const std::vector<Vector> bad{Vector{1.0, 0.0}, Vector{1.0, 0.0}};
  CHECK_FALSE(summation_bound_check(bad, NormOracle::lp(2.0, 2), 1.0, c).condition_holds);
}

TEST_CASE("remark counterexample") {
  for (std::size_t m : {1u, 2u, 7u, 40u}) {
    const auto table = remark_norm_table(m);
    REQUIRE(table.size() == m);
    for (std::size_t j = 1; j <= m; ++j) {
      const double s = double(m - j + 1);
      const auto v = remark_counterexample(j, m, 1.1);
      CHECK(v.closed_form == doctest::Approx(std::sqrt(s * s + s)).epsilon(1e-15));
      CHECK(v.norm_value == doctest::Approx(v.closed_form).epsilon(1e-12));
      CHECK(table[j - 1] == doctest::Approx(v.closed_form).epsilon(1e-12));
      CHECK(v.ratio == doctest::Approx(std::sqrt(s * s + s) / (std::sqrt(2.0) * std::pow(s, 1.0 / 1.1))).epsilon(1e-14));
    }
  }
  CHECK(remark_ratio(1.0, 2.0) == doctest::Approx(1.0));
  CHECK_THROWS_AS(remark_counterexample(0, 3, 2.0), std::invalid_argument);
  CHECK_THROWS_AS(remark_counterexample(4, 3, 2.0), std::invalid_argument);
}
