#pragma once

// Coefficient generators shared by the sampled greedy constants and the
// embedding sweeps.

#include <cstddef>
#include <cstdint>
#include <string_view>
#include <vector>

#include "squeeze/rng.hpp"

namespace squeeze {

enum class SampleKind : std::uint8_t {
  gaussian,
  sign_block,      ///< +-1 on a random contiguous block
  balanced_block,  ///< alternating signs on a random contiguous block
  geometric,       ///< r^k on a random permutation with random signs
  dyadic,          ///< +-2^{-level} with random levels
  indicator,       ///< 1 on a random subset
};

inline constexpr std::size_t kSampleKinds = 6;

std::string_view sample_kind_name(SampleKind kind);

/// One coefficient vector of length m of the given kind; never all zero.
std::vector<double> sample_coefficients(SampleKind kind, std::size_t m, Rng& rng);

/// Sample number i of a sweep: the kind cycles through all kinds and the
/// values come from a stream derived from (seed, i) alone.
std::vector<double> sweep_sample(std::size_t i, std::size_t m, std::uint64_t seed);

}  // namespace squeeze
