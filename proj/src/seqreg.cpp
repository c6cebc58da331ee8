#include "squeeze/seqreg.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "descriptor_util.hpp"

namespace squeeze::seqreg {

PositiveSequence::PositiveSequence(std::vector<double> values) : values_(std::move(values)) {
  if (values_.empty()) throw std::invalid_argument("PositiveSequence: empty sequence");
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (!(values_[i] > 0.0) || !std::isfinite(values_[i])) {
      throw std::invalid_argument("PositiveSequence: entry " + std::to_string(i + 1) +
                                  " is not a positive finite number");
    }
  }
}

PositiveSequence PositiveSequence::truncated(std::size_t n) const {
  if (n == 0 || n > size()) throw std::out_of_range("PositiveSequence::truncated: bad length");
  return PositiveSequence(std::vector<double>(values_.begin(), values_.begin() + n));
}

Weight::Weight(std::span<const double> w) {
  if (w.empty()) throw std::invalid_argument("Weight: empty weight");
  if (!(w[0] > 0.0) || !std::isfinite(w[0])) throw std::invalid_argument("Weight: w_1 must be > 0");
  s_.reserve(w.size());
  CompensatedSum acc;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (!(w[i] >= 0.0) || !std::isfinite(w[i])) {
      throw std::invalid_argument("Weight: w_" + std::to_string(i + 1) + " must be >= 0");
    }
    acc.add(w[i]);
    s_.push_back(i == 0 ? w[0] : std::max(acc.value(), s_.back()));
  }
  w_.resize(s_.size());
  w_[0] = s_[0];
  for (std::size_t i = 1; i < s_.size(); ++i) w_[i] = s_[i] - s_[i - 1];
}

Weight Weight::from_primitive(std::span<const double> s) {
  if (s.empty()) throw std::invalid_argument("Weight::from_primitive: empty primitive");
  Weight out;
  out.s_.assign(s.begin(), s.end());
  out.w_.resize(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (!(s[i] > 0.0) || !std::isfinite(s[i])) {
      throw std::invalid_argument("Weight::from_primitive: s_" + std::to_string(i + 1) +
                                  " must be positive");
    }
    if (i > 0 && s[i] < s[i - 1]) {
      throw std::invalid_argument("Weight::from_primitive: primitive must be nondecreasing");
    }
    out.w_[i] = i == 0 ? s[0] : s[i] - s[i - 1];
  }
  return out;
}

Weight Weight::truncated(std::size_t n) const {
  if (n == 0 || n > size()) throw std::out_of_range("Weight::truncated: bad length");
  Weight out;
  out.w_.assign(w_.begin(), w_.begin() + n);
  out.s_.assign(s_.begin(), s_.begin() + n);
  return out;
}

double primitive(const Weight& w, std::size_t m) {
  if (m == 0 || m > w.size()) throw std::out_of_range("primitive: index out of range");
  return w.primitive(m);
}

double doubling_ratio(const PositiveSequence& sigma) {
  const auto s = sigma.values();
  for (std::size_t i = 1; i < s.size(); ++i) {
    if (s[i] < s[i - 1]) throw std::invalid_argument("doubling_ratio: sequence is not nondecreasing");
  }
  double best = 0.0;
  for (std::size_t m = 1; m <= s.size(); ++m) {
    best = std::max(best, sigma(m) / sigma((m + 1) / 2));
  }
  return best;
}

double doubling_ratio(const Weight& w) { return doubling_ratio(w.primitive_sequence()); }

bool urp_holds(const PositiveSequence& tau, std::size_t b, double rel_tol) {
  const double half_b = static_cast<double>(b) / 2.0;
  for (std::size_t n = 1; b * n <= tau.size(); ++n) {
    if (tau(b * n) > half_b * tau(n) * (1.0 + rel_tol)) return false;
  }
  return true;
}

bool lrp_holds(const PositiveSequence& tau, std::size_t b, double rel_tol) {
  for (std::size_t m = 1; b * m <= tau.size(); ++m) {
    if (2.0 * tau(m) > tau(b * m) * (1.0 + rel_tol)) return false;
  }
  return true;
}

namespace {

template <class Pred>
std::optional<std::size_t> smallest_witness(const PositiveSequence& tau, std::size_t b_max,
                                            Pred holds) {
  const std::size_t top = std::min(b_max, tau.size());
  for (std::size_t b = 2; b <= top; ++b) {
    if (holds(b)) return b;
  }
  return std::nullopt;
}

}  // namespace

std::optional<std::size_t> urp_witness(const PositiveSequence& tau, std::size_t b_max,
                                       double rel_tol) {
  if (b_max < 2) throw std::invalid_argument("urp_witness: b_max must be >= 2");
  return smallest_witness(tau, b_max, [&](std::size_t b) { return urp_holds(tau, b, rel_tol); });
}

std::optional<std::size_t> lrp_witness(const PositiveSequence& tau, std::size_t b_max,
                                       double rel_tol) {
  if (b_max < 2) throw std::invalid_argument("lrp_witness: b_max must be >= 2");
  return smallest_witness(tau, b_max, [&](std::size_t b) { return lrp_holds(tau, b, rel_tol); });
}

double essentially_increasing_ratio(const PositiveSequence& tau) {
  double running = 0.0;
  double best = 1.0;
  for (double t : tau.values()) {
    running = std::max(running, t);
    best = std::max(best, running / t);
  }
  return best;
}

PositiveSequence dual_sequence(const PositiveSequence& tau) {
  if (tau.dual_) {
    PositiveSequence out(*tau.dual_);
    out.dual_ = std::make_shared<const std::vector<double>>(tau.values_);
    return out;
  }
  std::vector<double> d(tau.size());
  for (std::size_t n = 1; n <= tau.size(); ++n) d[n - 1] = static_cast<double>(n) / tau(n);
  PositiveSequence out(std::move(d));
  out.dual_ = std::make_shared<const std::vector<double>>(tau.values_);
  return out;
}

double urp_condition_c(const PositiveSequence& tau) {
  CompensatedSum inverse_sum;
  double best = 0.0;
  for (std::size_t m = 1; m <= tau.size(); ++m) {
    inverse_sum.add(1.0 / tau(m));
    best = std::max(best, tau(m) * inverse_sum.value() / static_cast<double>(m));
  }
  return best;
}

PositiveSequence power_sequence(const PositiveSequence& tau, double p) {
  if (!(p > 0.0)) throw std::invalid_argument("power_sequence: p must be > 0");
  std::vector<double> out(tau.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = std::pow(tau.values()[i], p);
  return PositiveSequence(std::move(out));
}

PositiveSequence running_max(const PositiveSequence& tau) {
  std::vector<double> out(tau.size());
  double running = 0.0;
  for (std::size_t i = 0; i < out.size(); ++i) {
    running = std::max(running, tau.values()[i]);
    out[i] = running;
  }
  return PositiveSequence(std::move(out));
}

RatioBand equivalence_band(const PositiveSequence& a, const PositiveSequence& b) {
  return ratio_band(a.values(), b.values());
}

namespace {

std::vector<double> explicit_list(std::string_view text) {
  const auto j = nlohmann::json::parse(text);
  if (!j.is_array()) throw std::invalid_argument("expected a JSON array of numbers");
  std::vector<double> out;
  for (const auto& v : j) {
    if (!v.is_number()) throw std::invalid_argument("expected a JSON array of numbers");
    out.push_back(v.get<double>());
  }
  return out;
}

}  // namespace

PositiveSequence make_sequence(std::string_view descriptor, std::size_t n) {
  const auto [name, arg] = detail::split_descriptor(descriptor);
  if (name == "explicit" || name.starts_with("[")) {
    return PositiveSequence(explicit_list(name == "explicit" ? arg : descriptor));
  }
  if (n == 0) throw std::invalid_argument("make_sequence: horizon must be >= 1");
  std::vector<double> t(n);
  if (name == "unit") {
    std::fill(t.begin(), t.end(), 1.0);
  } else if (name == "power") {
    const double a = detail::parse_double(arg);
    for (std::size_t i = 0; i < n; ++i) {
      const double x = static_cast<double>(i + 1);
      t[i] = a == 0.5 ? std::sqrt(x) : std::pow(x, a);
    }
  } else if (name == "geometric") {
    const double r = detail::parse_double(arg);
    if (!(r > 0.0)) throw std::invalid_argument("geometric: ratio must be > 0");
    for (std::size_t i = 0; i < n; ++i) t[i] = std::pow(r, static_cast<double>(i));
  } else {
    throw std::invalid_argument("unknown sequence generator '" + std::string(name) + "'");
  }
  return PositiveSequence(std::move(t));
}

Weight make_weight(std::string_view descriptor, std::size_t n) {
  const auto [name, arg] = detail::split_descriptor(descriptor);
  if (name == "explicit" || name.starts_with("[")) {
    const auto w = explicit_list(name == "explicit" ? arg : descriptor);
    return Weight(w);
  }
  if (name == "primitive") return Weight::from_primitive(explicit_list(arg));
  if (n == 0) throw std::invalid_argument("make_weight: horizon must be >= 1");
  if (name == "unit") {
    std::vector<double> s(n);
    for (std::size_t i = 0; i < n; ++i) s[i] = static_cast<double>(i + 1);
    return Weight::from_primitive(s);
  }
  if (name == "power") {
    const double a = detail::parse_double(arg);
    if (!(a >= 0.0)) throw std::invalid_argument("power weight: exponent must be >= 0");
    std::vector<double> s(n);
    for (std::size_t i = 0; i < n; ++i) {
      const double x = static_cast<double>(i + 1);
      s[i] = a == 0.5 ? std::sqrt(x) : std::pow(x, a);
    }
    return Weight::from_primitive(s);
  }
  if (name == "geometric") {
    const double r = detail::parse_double(arg);
    if (!(r > 0.0)) throw std::invalid_argument("geometric weight: ratio must be > 0");
    std::vector<double> w(n);
    for (std::size_t i = 0; i < n; ++i) w[i] = std::pow(r, static_cast<double>(i));
    return Weight(w);
  }
  throw std::invalid_argument("unknown weight generator '" + std::string(name) + "'");
}

}  // namespace squeeze::seqreg
