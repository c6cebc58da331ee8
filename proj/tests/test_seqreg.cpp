#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>
#include <stdexcept>

#include "oracles.hpp"
#include "squeeze/seqreg.hpp"

using namespace squeeze::seqreg;

namespace {

std::vector<double> to_double(const std::vector<std::int64_t>& t) { return {t.begin(), t.end()}; }

std::vector<std::int64_t> random_integer_sequence(std::mt19937_64& gen) {
  std::uniform_int_distribution<int> len(8, 80);
  std::uniform_real_distribution<double> expo(0.0, 1.6);
  std::uniform_int_distribution<int> jitter(0, 3);
  const int n = len(gen);
  const double a = expo(gen);
  std::vector<std::int64_t> t(static_cast<std::size_t>(n));
  for (int i = 1; i <= n; ++i) {
    t[static_cast<std::size_t>(i - 1)] = 1 + static_cast<std::int64_t>(std::floor(50.0 * std::pow(i, a))) + jitter(gen);
  }
  return t;
}

}  // namespace

TEST_CASE("generators produce the named sequences") {
  const auto unit = make_sequence("unit", 5);
  CHECK(unit.size() == 5);
  for (std::size_t n = 1; n <= 5; ++n) CHECK(unit(n) == 1.0);

  const auto root = make_sequence("power:0.5", 10);
  for (std::size_t n = 1; n <= 10; ++n) CHECK(root(n) == doctest::Approx(std::sqrt(double(n))).epsilon(1e-15));

  const auto geo = make_sequence("geometric:2", 6);
  CHECK(geo(6) == 32.0);

  const auto expl = make_sequence("explicit:[1,2,5]", 99);
  CHECK(expl.size() == 3);
  CHECK(expl(3) == 5.0);
  CHECK(make_sequence("[4,4]").size() == 2);

  CHECK_THROWS_AS(make_sequence("nope"), std::invalid_argument);
  CHECK_THROWS_AS(make_sequence("[1,-2]"), std::invalid_argument);
  CHECK_THROWS_AS(make_sequence("[1,2", 3), std::exception);
}

TEST_CASE("weights and primitives") {
  const auto w = make_weight("unit", 8);
  for (std::size_t m = 1; m <= 8; ++m) CHECK(w.primitive(m) == double(m));

  const auto root = make_weight("power:0.5", 64);
  for (std::size_t m = 1; m <= 64; ++m) {
    CHECK(root.primitive(m) == doctest::Approx(std::sqrt(double(m))).epsilon(1e-14));
  }

  const auto geo = make_weight("geometric:0.5", 4);
  CHECK(geo.weight(3) == 0.25);
  CHECK(geo.primitive(4) == 1.875);

  const auto prim = make_weight("primitive:[1,3,3,7]");
  CHECK(prim.weight(2) == 2.0);
  CHECK(prim.weight(3) == 0.0);
  CHECK(primitive(prim, 4) == 7.0);
  CHECK_THROWS_AS(primitive(prim, 5), std::out_of_range);
  CHECK_THROWS_AS(make_weight("primitive:[2,1]"), std::invalid_argument);
  CHECK_THROWS_AS(make_weight("[0,1]"), std::invalid_argument);
}

TEST_CASE("doubling ratio matches a direct scan") {
  for (const char* d : {"unit", "power:0.5", "power:2", "geometric:0.9"}) {
    const auto w = make_weight(d, 300);
    double best = 0.0;
    for (std::size_t m = 1; m <= 300; ++m) best = std::max(best, w.primitive(m) / w.primitive((m + 1) / 2));
    CHECK(doubling_ratio(w) == doctest::Approx(best).epsilon(1e-15));
  }
  CHECK(doubling_ratio(make_weight("unit", 100)) == 2.0);
  CHECK_THROWS_AS(doubling_ratio(make_sequence("[1,3,2]")), std::invalid_argument);
}

TEST_CASE("regularity witnesses of power sequences") {
  const auto root = make_sequence("power:0.5", 64);
  CHECK(urp_witness(root, 8) == std::optional<std::size_t>(4));
  CHECK(lrp_witness(root, 8) == std::optional<std::size_t>(4));
  CHECK_FALSE(urp_witness(root, 3).has_value());

  // t_n = n never satisfies bn <= (b/2) n; a constant never satisfies 2 <= 1.
  CHECK_FALSE(urp_witness(make_sequence("power:1", 64), 64).has_value());
  CHECK_FALSE(lrp_witness(make_sequence("unit", 64), 64).has_value());
  CHECK_THROWS_AS(urp_witness(root, 1), std::invalid_argument);
}

TEST_CASE("upper regularity agrees with an integer oracle and with lower regularity of the dual") {
  std::mt19937_64 gen(20240611);
  for (int trial = 0; trial < 300; ++trial) {
    const auto t = random_integer_sequence(gen);
    const PositiveSequence tau(to_double(t));
    const auto dual = dual_sequence(tau);
    for (std::size_t b = 2; b <= 12; ++b) {
      const bool exact = oracle::urp_exact(t, b);
      CHECK(urp_holds(tau, b, 0.0) == exact);
      CHECK(lrp_holds(dual, b) == oracle::dual_lrp_exact(t, b));
      CHECK(lrp_holds(dual, b) == exact);
    }
  }
}

TEST_CASE("dual sequence is an exact involution") {
  std::mt19937_64 gen(7);
  std::lognormal_distribution<double> value(0.0, 2.0);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<double> v(50);
    for (auto& x : v) x = value(gen);
    const PositiveSequence tau(v);
    const auto dual = dual_sequence(tau);
    for (std::size_t n = 1; n <= 50; ++n) CHECK(dual(n) == double(n) / v[n - 1]);
    CHECK(dual_sequence(dual) == tau);
  }
}

TEST_CASE("essentially increasing ratio and running maximum") {
  const PositiveSequence t(std::vector<double>{1, 4, 2, 5, 3});
  // max over m of max_{n<=m} t_n / t_m: at m=3 it is 4/2, at m=5 it is 5/3.
  CHECK(essentially_increasing_ratio(t) == 2.0);
  const auto rm = running_max(t);
  CHECK(rm.values()[2] == 4.0);
  CHECK(rm.values()[4] == 5.0);
  const auto band = equivalence_band(t, rm);
  CHECK(band.lo == 0.5);
  CHECK(band.hi == 1.0);
  CHECK(essentially_increasing_ratio(make_sequence("power:0.5", 100)) == 1.0);
}

TEST_CASE("urp condition constant of sqrt n") {
  const auto tau = make_sequence("power:0.5", 100);
  long double best = 0.0L, acc = 0.0L;
  for (int m = 1; m <= 100; ++m) {
    acc += 1.0L / std::sqrt(static_cast<long double>(m));
    best = std::max(best, acc / m * std::sqrt(static_cast<long double>(m)));
  }
  CHECK(urp_condition_c(tau) == doctest::Approx(static_cast<double>(best)).epsilon(1e-13));
  CHECK(urp_condition_c(tau) == doctest::Approx(1.85896).epsilon(1e-5));
}

TEST_CASE("power sequence") {
  const auto sq = power_sequence(make_sequence("power:0.5", 10), 2.0);
  for (std::size_t n = 1; n <= 10; ++n) CHECK(sq(n) == doctest::Approx(double(n)).epsilon(1e-15));
  CHECK_THROWS_AS(power_sequence(sq, 0.0), std::invalid_argument);
}
