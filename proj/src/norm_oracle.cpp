#include "squeeze/norm_oracle.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "descriptor_util.hpp"
#include "squeeze/numeric.hpp"
#include "squeeze/rng.hpp"

namespace squeeze {

namespace {

constexpr std::uint64_t kAxiomSeed = 0x5EEDC0DEULL;
constexpr std::size_t kAxiomTriples = 100;
constexpr double kAxiomTol = 1e-10;

std::string format_exponent(double p) {
  return std::isinf(p) ? "inf" : detail::format_number(p);
}

void require_dim(std::span<const double> x, std::size_t dim, const std::string& name) {
  if (x.size() != dim) {
    throw std::invalid_argument("norm " + name + ": expected dimension " + std::to_string(dim) +
                                ", got " + std::to_string(x.size()));
  }
}

}  // namespace

double lp_norm(std::span<const double> x, double p) {
  double peak = 0.0;
  for (double v : x) peak = std::max(peak, std::abs(v));
  if (std::isinf(p) || peak == 0.0) return peak;
  CompensatedSum acc;
  if (p == 1.0) {
    for (double v : x) acc.add(std::abs(v));
    return acc.value();
  }
  for (double v : x) {
    const double r = std::abs(v) / peak;
    acc.add(p == 2.0 ? r * r : std::pow(r, p));
  }
  return peak * (p == 2.0 ? std::sqrt(acc.value()) : std::pow(acc.value(), 1.0 / p));
}

double conjugate_exponent(double p) {
  if (!(p >= 1.0)) throw std::invalid_argument("conjugate_exponent: p must be >= 1");
  if (p == 1.0) return kInf;
  if (std::isinf(p)) return 1.0;
  return p / (p - 1.0);
}

NormOracle::NormOracle(NormKind kind, std::string name, std::size_t dim, Fn fn)
    : kind_(kind), name_(std::move(name)), dim_(dim), fn_(std::make_shared<const Fn>(std::move(fn))) {
  if (dim_ == 0) throw std::invalid_argument("NormOracle: dimension must be >= 1");
}

double NormOracle::operator()(std::span<const double> x) const {
  require_dim(x, dim_, name_);
  return (*fn_)(x);
}

AxiomCheck NormOracle::run_axiom_check() const {
  AxiomCheck check;
  Rng rng(kAxiomSeed);
  std::vector<double> zero(dim_, 0.0);
  check.zero = (*this)(zero) == 0.0;
  std::vector<double> x(dim_), y(dim_), cx(dim_), sum(dim_);
  for (std::size_t t = 0; t < kAxiomTriples; ++t) {
    for (std::size_t i = 0; i < dim_; ++i) {
      x[i] = rng.normal();
      y[i] = rng.normal();
    }
    const double c = rng.uniform(-4.0, 4.0);
    for (std::size_t i = 0; i < dim_; ++i) {
      cx[i] = c * x[i];
      sum[i] = x[i] + y[i];
    }
    const double nx = (*this)(x);
    const double ny = (*this)(y);
    if (std::abs((*this)(cx) - std::abs(c) * nx) > kAxiomTol * std::max(1.0, std::abs(c) * nx)) {
      check.homogeneity = false;
    }
    if (!leq_tol((*this)(sum), nx + ny, kAxiomTol)) check.triangle = false;
    ++check.triples;
  }
  return check;
}

NormOracle NormOracle::lp(double p, std::size_t dim) {
  if (!(p >= 1.0)) throw std::invalid_argument("NormOracle::lp: p must lie in [1, inf]");
  NormOracle out(NormKind::lp, "l" + format_exponent(p) + ":" + std::to_string(dim), dim,
                 [p](std::span<const double> x) { return lp_norm(x, p); });
  out.p_ = p;
  out.axioms_ = out.run_axiom_check();
  return out;
}

NormOracle NormOracle::lorentz(const lorentz::LorentzSpec& spec, std::size_t dim) {
  if (dim > spec.size()) {
    throw std::invalid_argument("NormOracle::lorentz: dimension exceeds the weight horizon");
  }
  auto shared = std::make_shared<const lorentz::LorentzSpec>(spec);
  std::string name = "lorentz:" + format_exponent(spec.q()) + ":" + std::to_string(dim);
  NormOracle out(NormKind::lorentz, std::move(name), dim,
                 [shared](std::span<const double> x) { return lorentz::lorentz_norm(x, *shared); });
  out.axioms_ = out.run_axiom_check();
  if (!out.axioms_.zero || !out.axioms_.homogeneity) {
    throw std::invalid_argument("NormOracle::lorentz: spec fails the zero/homogeneity check");
  }
  return out;
}

NormOracle NormOracle::custom(std::string name, std::size_t dim, Fn fn) {
  NormOracle out(NormKind::custom, std::move(name), dim, std::move(fn));
  out.axioms_ = out.run_axiom_check();
  if (!out.axioms_.zero || !out.axioms_.homogeneity || !out.axioms_.triangle) {
    throw std::invalid_argument("NormOracle::custom: '" + out.name_ + "' fails the norm axiom check");
  }
  return out;
}

NormOracle NormOracle::estimated_dual(const NormOracle& primal, std::size_t restarts,
                                      std::size_t steps) {
  const std::size_t dim = primal.dim();
  auto estimate = [primal, restarts, steps, dim](std::span<const double> y) {
    double y_peak = 0.0;
    for (double v : y) y_peak = std::max(y_peak, std::abs(v));
    if (y_peak == 0.0) return 0.0;

    auto pairing = [&](const std::vector<double>& x) {
      const double nx = primal(x);
      if (nx == 0.0) return 0.0;
      CompensatedSum acc;
      for (std::size_t i = 0; i < dim; ++i) acc.add(x[i] * y[i]);
      return acc.value() / nx;
    };

    Rng rng(0xD0A1ULL);
    double best = 0.0;
    std::vector<double> x(dim), cand(dim);
    for (std::size_t r = 0; r < restarts; ++r) {
      Rng stream = rng.derive(r);
      for (std::size_t i = 0; i < dim; ++i) {
        if (r == 0) {
          x[i] = y[i];
        } else if (r == 1) {
          x[i] = y[i] > 0.0 ? 1.0 : (y[i] < 0.0 ? -1.0 : 0.0);
        } else {
          x[i] = stream.normal();
        }
      }
      double value = pairing(x);
      double step = 0.5;
      for (std::size_t s = 0; s < steps && step > 1e-9; ++s) {
        double scale = 0.0;
        for (double v : x) scale = std::max(scale, std::abs(v));
        for (std::size_t i = 0; i < dim; ++i) cand[i] = x[i] + step * scale * stream.normal();
        const double trial = pairing(cand);
        if (trial > value) {
          value = trial;
          x.swap(cand);
          step *= 1.5;
        } else {
          step *= 0.85;
        }
      }
      best = std::max(best, value);
    }
    return best;
  };
  NormOracle out(NormKind::estimated_dual, "dual(" + primal.name() + ")", dim, estimate);
  out.approximate_ = true;
  return out;
}

std::optional<NormOracle> NormOracle::dual() const {
  if (kind_ == NormKind::lp) return NormOracle::lp(conjugate_exponent(*p_), dim_);
  return std::nullopt;
}

NormOracle parse_norm(std::string_view text) {
  if (!text.empty() && text.front() == '{') return parse_norm(nlohmann::json::parse(text));
  if (text.starts_with("lorentz:")) {
    const auto rest = text.substr(8);
    const auto c1 = rest.find(':');
    const auto c2 = c1 == std::string_view::npos ? c1 : rest.find(':', c1 + 1);
    if (c2 == std::string_view::npos) {
      throw std::invalid_argument("norm '" + std::string(text) + "': expected lorentz:<q>:<N>:<weight>");
    }
    const double q = detail::parse_double(rest.substr(0, c1));
    const std::size_t n = detail::parse_size(rest.substr(c1 + 1, c2 - c1 - 1));
    const auto weight = seqreg::make_weight(rest.substr(c2 + 1), n);
    return NormOracle::lorentz(lorentz::LorentzSpec(q, weight), n);
  }
  if (text.starts_with("l")) {
    const auto colon = text.find(':');
    if (colon == std::string_view::npos) {
      throw std::invalid_argument("norm '" + std::string(text) + "': expected l<p>:<N>");
    }
    const double p = detail::parse_double(text.substr(1, colon - 1));
    return NormOracle::lp(p, detail::parse_size(text.substr(colon + 1)));
  }
  throw std::invalid_argument("unknown norm '" + std::string(text) + "'");
}

NormOracle parse_norm(const nlohmann::json& j) {
  if (j.is_string()) return parse_norm(std::string_view(j.get_ref<const std::string&>()));
  if (!j.is_object() || !j.contains("N")) {
    throw std::invalid_argument("norm spec: expected a string or an object with an 'N' field");
  }
  const std::size_t n = j.at("N").get<std::size_t>();
  if (j.value("kind", std::string()) == "lp") {
    const auto& p = j.at("p");
    const double pv = p.is_string() ? detail::parse_double(p.get<std::string>()) : p.get<double>();
    return NormOracle::lp(pv, n);
  }
  return NormOracle::lorentz(lorentz::spec_from_json(j), n);
}

}  // namespace squeeze
