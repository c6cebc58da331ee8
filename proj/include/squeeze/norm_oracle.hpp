#pragma once

// Computable norms on R^N. An oracle is immutable after construction and its
// evaluation is reentrant, so one instance can be shared across threads.

#include <cstddef>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>

#include <Eigen/Dense>
#include <json.hpp>

#include "squeeze/lorentz.hpp"

namespace squeeze {

enum class NormKind { lp, lorentz, custom, estimated_dual };

/// Outcome of the randomized norm-axiom check run at construction.
struct AxiomCheck {
  bool zero = true;
  bool homogeneity = true;
  bool triangle = true;
  std::size_t triples = 0;
};

class NormOracle {
 public:
  using Fn = std::function<double(std::span<const double>)>;

  /// ell_p on R^dim, p in [1, inf].
  static NormOracle lp(double p, std::size_t dim);
  /// Lorentz-type (quasi-)norm truncated to the first dim coordinates.
  /// A failing triangle check is recorded, not rejected.
  static NormOracle lorentz(const lorentz::LorentzSpec& spec, std::size_t dim);
  /// Arbitrary norm; rejected if any axiom check fails.
  static NormOracle custom(std::string name, std::size_t dim, Fn fn);
  /// sup { <x, y> : ||x|| <= 1 } estimated from below by multi-start ascent.
  static NormOracle estimated_dual(const NormOracle& primal, std::size_t restarts = 8,
                                   std::size_t steps = 400);

  std::size_t dim() const { return dim_; }
  NormKind kind() const { return kind_; }
  const std::string& name() const { return name_; }
  /// Exponent of an ell_p oracle; empty otherwise.
  std::optional<double> p() const { return p_; }
  /// True when values are estimates rather than exact norms.
  bool approximate() const { return approximate_; }
  const AxiomCheck& axioms() const { return axioms_; }

  /// Exact dual oracle when one is known (ell_p); empty otherwise.
  std::optional<NormOracle> dual() const;

  double operator()(std::span<const double> x) const;
  double operator()(const Eigen::VectorXd& x) const {
    return (*this)(std::span<const double>(x.data(), static_cast<std::size_t>(x.size())));
  }

 private:
  NormOracle(NormKind kind, std::string name, std::size_t dim, Fn fn);
  AxiomCheck run_axiom_check() const;

  NormKind kind_;
  std::string name_;
  std::size_t dim_;
  std::shared_ptr<const Fn> fn_;
  std::optional<double> p_;
  bool approximate_ = false;
  AxiomCheck axioms_;
};

/// ell_p norm with overflow-safe scaling.
double lp_norm(std::span<const double> x, double p);

/// Conjugate exponent p / (p - 1), with 1 <-> inf.
double conjugate_exponent(double p);

/// Parses "l<p>:<N>" (p a number or "inf"), "lorentz:<q>:<N>:<weight>" and
/// the JSON forms {"kind": "lp", "p": .., "N": ..} or a Lorentz spec object
/// with an "N" field.
NormOracle parse_norm(std::string_view text);
NormOracle parse_norm(const nlohmann::json& j);
inline NormOracle parse_norm(const std::string& text) { return parse_norm(std::string_view(text)); }
inline NormOracle parse_norm(const char* text) { return parse_norm(std::string_view(text)); }

}  // namespace squeeze
