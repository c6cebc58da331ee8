#include "squeeze/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace squeeze {

std::string_view sample_kind_name(SampleKind kind) {
  switch (kind) {
    case SampleKind::gaussian: return "gaussian";
    case SampleKind::sign_block: return "sign_block";
    case SampleKind::balanced_block: return "balanced_block";
    case SampleKind::geometric: return "geometric";
    case SampleKind::dyadic: return "dyadic";
    case SampleKind::indicator: return "indicator";
  }
  return "unknown";
}

namespace {

std::pair<std::size_t, std::size_t> random_block(std::size_t m, Rng& rng) {
  const std::size_t a = static_cast<std::size_t>(rng.below(m));
  const std::size_t b = static_cast<std::size_t>(rng.below(m));
  return {std::min(a, b), std::max(a, b) + 1};
}

}  // namespace

std::vector<double> sample_coefficients(SampleKind kind, std::size_t m, Rng& rng) {
  if (m == 0) throw std::invalid_argument("sample_coefficients: length must be >= 1");
  std::vector<double> a(m, 0.0);
  switch (kind) {
    case SampleKind::gaussian:
      for (double& x : a) x = rng.normal();
      break;
    case SampleKind::sign_block: {
      const auto [lo, hi] = random_block(m, rng);
      const bool same_sign = rng.uniform() < 0.5;
      for (std::size_t i = lo; i < hi; ++i) a[i] = same_sign ? 1.0 : rng.sign();
      break;
    }
    case SampleKind::balanced_block: {
      const auto [lo, hi] = random_block(m, rng);
      for (std::size_t i = lo; i < hi; ++i) a[i] = (i - lo) % 2 == 0 ? 1.0 : -1.0;
      break;
    }
    case SampleKind::geometric: {
      const double r = rng.uniform(0.3, 0.95);
      std::vector<std::size_t> perm(m);
      std::iota(perm.begin(), perm.end(), std::size_t{0});
      for (std::size_t i = m; i > 1; --i) std::swap(perm[i - 1], perm[rng.below(i)]);
      for (std::size_t i = 0; i < m; ++i) a[perm[i]] = rng.sign() * std::pow(r, static_cast<double>(i));
      break;
    }
    case SampleKind::dyadic:
      for (double& x : a) x = rng.sign() * std::ldexp(1.0, -static_cast<int>(rng.below(6)));
      break;
    case SampleKind::indicator:
      for (double& x : a) x = rng.uniform() < 0.5 ? 1.0 : 0.0;
      break;
  }
  if (std::all_of(a.begin(), a.end(), [](double x) { return x == 0.0; })) a[rng.below(m)] = 1.0;
  return a;
}

std::vector<double> sweep_sample(std::size_t i, std::size_t m, std::uint64_t seed) {
  Rng rng(seed, 0x5A3D1E);
  Rng stream = rng.derive(i);
  return sample_coefficients(static_cast<SampleKind>(i % kSampleKinds), m, stream);
}

}  // namespace squeeze
