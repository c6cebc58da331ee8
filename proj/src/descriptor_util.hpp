#pragma once

// Helpers for the "name:argument" descriptor strings accepted by the
// generators and the CLI. Internal to the library.

#include <charconv>
#include <cstddef>
#include <limits>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>

namespace squeeze::detail {

/// Splits at the first ':'; a descriptor that starts with '[' or '{' is
/// returned whole as the name.
inline std::pair<std::string_view, std::string_view> split_descriptor(std::string_view d) {
  if (!d.empty() && (d.front() == '[' || d.front() == '{')) return {d, {}};
  const auto colon = d.find(':');
  if (colon == std::string_view::npos) return {d, {}};
  return {d.substr(0, colon), d.substr(colon + 1)};
}

inline double parse_double(std::string_view text) {
  if (text == "inf" || text == "infinity") return std::numeric_limits<double>::infinity();
  double value = 0.0;
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc() || ptr != end || text.empty()) {
    throw std::invalid_argument("expected a number, got '" + std::string(text) + "'");
  }
  return value;
}

inline std::size_t parse_size(std::string_view text) {
  std::size_t value = 0;
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc() || ptr != end || text.empty()) {
    throw std::invalid_argument("expected a nonnegative integer, got '" + std::string(text) + "'");
  }
  return value;
}

/// Shortest round-trip decimal form of a double.
inline std::string format_number(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

}  // namespace squeeze::detail
