#include "squeeze/lorentz.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "squeeze/errors.hpp"

namespace squeeze::lorentz {

namespace {

void require_fits(std::span<const double> f, std::size_t horizon, const char* who) {
  if (f.size() > horizon) {
    throw std::invalid_argument(std::string(who) + ": vector length " + std::to_string(f.size()) +
                                " exceeds weight horizon " + std::to_string(horizon));
  }
}

double checked_q(const nlohmann::json& q) {
  if (q.is_string()) {
    const auto s = q.get<std::string>();
    if (s == "inf" || s == "infinity") return kInf;
    throw std::invalid_argument("LorentzSpec: q must be a number or \"inf\"");
  }
  if (!q.is_number()) throw std::invalid_argument("LorentzSpec: q must be a number or \"inf\"");
  return q.get<double>();
}

}  // namespace

LorentzSpec::LorentzSpec(double q, Weight weight, Flavor flavor, double doubling_cap)
    : q_(q), weight_(std::move(weight)), flavor_(flavor) {
  if (!(q_ > 0.0)) throw std::invalid_argument("LorentzSpec: q must be > 0");
  if (flavor_ == Flavor::direct && std::isinf(q_)) {
    throw std::invalid_argument("LorentzSpec: the direct flavor needs a finite q");
  }
  if (flavor_ != Flavor::direct) {
    const double ratio = seqreg::doubling_ratio(weight_);
    if (!(ratio <= doubling_cap)) {
      throw std::invalid_argument("LorentzSpec: doubling ratio " + std::to_string(ratio) +
                                  " exceeds the cap " + std::to_string(doubling_cap));
    }
  }
}

LorentzSpec spec_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw std::invalid_argument("LorentzSpec: expected a JSON object");
  if (!j.contains("q") || !j.contains("weight")) {
    throw std::invalid_argument("LorentzSpec: 'q' and 'weight' are required");
  }
  const double q = checked_q(j.at("q"));
  const std::size_t n = j.value("N", seqreg::kDefaultHorizon);
  const auto& wj = j.at("weight");
  Weight w = wj.is_string() ? seqreg::make_weight(wj.get<std::string>(), n)
                            : seqreg::make_weight(wj.dump(), n);
  Flavor flavor = Flavor::primitive;
  const std::string f = j.value("flavor", std::string("primitive"));
  if (f == "direct") {
    flavor = Flavor::direct;
  } else if (f == "marcinkiewicz") {
    flavor = Flavor::marcinkiewicz;
  } else if (f != "primitive") {
    throw std::invalid_argument("LorentzSpec: unknown flavor '" + f + "'");
  }
  return LorentzSpec(q, std::move(w), flavor);
}

nlohmann::json to_json(const LorentzSpec& spec) {
  nlohmann::json j;
  if (std::isinf(spec.q())) {
    j["q"] = "inf";
  } else {
    j["q"] = spec.q();
  }
  j["weight"] = std::vector<double>(spec.weight().weights().begin(), spec.weight().weights().end());
  switch (spec.flavor()) {
    case Flavor::primitive: j["flavor"] = "primitive"; break;
    case Flavor::direct: j["flavor"] = "direct"; break;
    case Flavor::marcinkiewicz: j["flavor"] = "marcinkiewicz"; break;
  }
  return j;
}

std::vector<std::size_t> rearrangement_order(std::span<const double> f) {
  std::vector<std::size_t> order(f.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return std::abs(f[a]) > std::abs(f[b]); });
  return order;
}

RealSequence rearrangement(std::span<const double> f) {
  RealSequence out(f.size());
  std::transform(f.begin(), f.end(), out.begin(), [](double x) { return std::abs(x); });
  std::stable_sort(out.begin(), out.end(), std::greater<>());
  return out;
}

double lorentz_norm(std::span<const double> f, const Weight& w, double q) {
  require_fits(f, w.size(), "lorentz_norm");
  if (!(q > 0.0)) throw std::invalid_argument("lorentz_norm: q must be > 0");
  const RealSequence a = rearrangement(f);
  if (std::isinf(q)) {
    double best = 0.0;
    for (std::size_t n = 0; n < a.size() && a[n] > 0.0; ++n) {
      best = std::max(best, a[n] * w.primitive(n + 1));
    }
    return best;
  }
  CompensatedSum acc;
  for (std::size_t n = 0; n < a.size() && a[n] > 0.0; ++n) {
    const double wn = w.weight(n + 1);
    if (q == 1.0) {
      acc.add(a[n] * wn);
    } else {
      const double sn = w.primitive(n + 1);
      acc.add(std::pow(a[n] * sn, q) * (wn / sn));
    }
  }
  return q == 1.0 ? acc.value() : std::pow(acc.value(), 1.0 / q);
}

double lorentz_norm_direct(std::span<const double> f, const Weight& u, double q) {
  require_fits(f, u.size(), "lorentz_norm_direct");
  if (!(q > 0.0) || std::isinf(q)) {
    throw std::invalid_argument("lorentz_norm_direct: q must be finite and > 0");
  }
  const RealSequence a = rearrangement(f);
  CompensatedSum acc;
  for (std::size_t n = 0; n < a.size() && a[n] > 0.0; ++n) {
    acc.add((q == 1.0 ? a[n] : std::pow(a[n], q)) * u.weight(n + 1));
  }
  return q == 1.0 ? acc.value() : std::pow(acc.value(), 1.0 / q);
}

double marcinkiewicz_norm(std::span<const double> f, const Weight& w) {
  require_fits(f, w.size(), "marcinkiewicz_norm");
  const RealSequence a = rearrangement(f);
  CompensatedSum partial;
  double best = 0.0;
  for (std::size_t m = 0; m < a.size() && a[m] > 0.0; ++m) {
    partial.add(a[m]);
    best = std::max(best, partial.value() / w.primitive(m + 1));
  }
  return best;
}

double lorentz_norm(std::span<const double> f, const LorentzSpec& spec) {
  switch (spec.flavor()) {
    case Flavor::primitive: return lorentz_norm(f, spec.weight(), spec.q());
    case Flavor::direct: return lorentz_norm_direct(f, spec.weight(), spec.q());
    case Flavor::marcinkiewicz: return marcinkiewicz_norm(f, spec.weight());
  }
  throw std::logic_error("lorentz_norm: unknown flavor");
}

RealSequence discrete_hardy(std::span<const double> f) {
  RealSequence out(f.size());
  CompensatedSum acc;
  for (std::size_t m = 0; m < f.size(); ++m) {
    acc.add(f[m]);
    out[m] = acc.value() / static_cast<double>(m + 1);
  }
  return out;
}

HardyBand hardy_equivalence_band(const LorentzSpec& spec, std::span<const RealSequence> samples) {
  if (samples.empty()) throw std::invalid_argument("hardy_equivalence_band: empty sample set");
  if (!(spec.q() > 1.0) || std::isinf(spec.q())) {
    throw std::invalid_argument("hardy_equivalence_band: q must lie in (1, inf)");
  }
  HardyBand out;
  out.urp_witness = seqreg::urp_witness(spec.weight().primitive_sequence(), 64);
  const std::size_t horizon = spec.size();
  for (const auto& f : samples) {
    const double denom = lorentz_norm(f, spec);
    if (denom == 0.0) continue;
    RealSequence padded = rearrangement(f);
    padded.resize(horizon, 0.0);
    out.band.add(lorentz_norm(discrete_hardy(padded), spec) / denom);
  }
  return out;
}

double fundamental_function(const LorentzSpec& spec, std::size_t m) {
  if (m == 0 || m > spec.size()) throw std::out_of_range("fundamental_function: index out of range");
  const RealSequence ones(m, 1.0);
  return lorentz_norm(ones, spec);
}

double embedding_gap_H(const Weight& w, std::size_t m) {
  if (m == 0 || m > w.size()) throw std::out_of_range("embedding_gap_H: index out of range");
  CompensatedSum acc;
  for (std::size_t n = 1; n <= m; ++n) acc.add(w.weight(n) / w.primitive(n));
  return acc.value();
}

RealSequence embedding_gap_table(const Weight& w) {
  RealSequence out(w.size());
  CompensatedSum acc;
  for (std::size_t n = 1; n <= w.size(); ++n) {
    acc.add(w.weight(n) / w.primitive(n));
    out[n - 1] = acc.value();
  }
  return out;
}

double delta_m(const Weight& w, double q, double r, std::size_t m) {
  if (!(q > 0.0) || !(r > 0.0)) throw std::invalid_argument("delta_m: indices must be > 0");
  if (q > r) throw std::invalid_argument("delta_m: requires q <= r");
  const double exponent = 1.0 / q - (std::isinf(r) ? 0.0 : 1.0 / r);
  if (exponent == 0.0) return 1.0;
  return std::pow(embedding_gap_H(w, m), exponent);
}

Weight allen_dual_weight(const Weight& w, double q) {
  if (!(q > 1.0) || std::isinf(q)) throw std::invalid_argument("allen_dual_weight: q must lie in (1, inf)");
  const double qp = q / (q - 1.0);
  std::vector<double> u(w.size());
  u[0] = std::pow(w.primitive(1), -qp);
  for (std::size_t n = 2; n <= w.size(); ++n) {
    const double prev = w.primitive(n - 1);
    const double sn = w.primitive(n);
    if (!(sn > prev)) {
      throw std::invalid_argument("allen_dual_weight: primitive is not strictly increasing at n = " +
                                  std::to_string(n));
    }
    const double growth = std::expm1(qp * std::log1p(w.weight(n) / prev));
    u[n - 1] = std::pow(static_cast<double>(n) / sn, qp) * growth;
  }
  return Weight(u);
}

LorentzSpec p_convexify(const LorentzSpec& spec, double p) {
  if (!(p > 0.0)) throw std::invalid_argument("p_convexify: p must be > 0");
  if (spec.flavor() != Flavor::primitive) {
    throw std::invalid_argument("p_convexify: only the primitive flavor is supported");
  }
  if (p == 1.0) return spec;
  const auto s = spec.weight().primitives();
  std::vector<double> t(s.size());
  std::transform(s.begin(), s.end(), t.begin(), [p](double x) { return std::pow(x, 1.0 / p); });
  return LorentzSpec(spec.q() * p, Weight::from_primitive(t), Flavor::primitive, kInf);
}

double convexified_norm(std::span<const double> f, const LorentzSpec& spec, double p) {
  if (!(p > 0.0)) throw std::invalid_argument("convexified_norm: p must be > 0");
  RealSequence powered(f.size());
  std::transform(f.begin(), f.end(), powered.begin(), [p](double x) { return std::pow(std::abs(x), p); });
  return std::pow(lorentz_norm(powered, spec), 1.0 / p);
}

LrpEquivalentWeight lrp_equivalent_weight(const Weight& w, LrpOptions options) {
  const PositiveSequence sigma = w.primitive_sequence();
  if (!seqreg::lrp_witness(sigma, options.b_max)) {
    throw std::invalid_argument("lrp_equivalent_weight: primitive has no LRP witness b <= " +
                                std::to_string(options.b_max));
  }
  const double ei = seqreg::essentially_increasing_ratio(seqreg::dual_sequence(sigma));
  if (!(ei <= options.ei_cap)) {
    throw std::invalid_argument("lrp_equivalent_weight: dual sequence is not essentially increasing");
  }
  std::vector<double> v(w.size());
  double running = kInf;
  for (std::size_t n = 1; n <= w.size(); ++n) {
    running = std::min(running, w.primitive(n) / static_cast<double>(n));
    v[n - 1] = running;
  }
  LrpEquivalentWeight out{Weight(v), {}, {}};
  CompensatedSum acc;
  for (std::size_t m = 1; m <= w.size(); ++m) {
    acc.add(v[m - 1]);
    out.mv_band.add(static_cast<double>(m) * v[m - 1] / w.primitive(m));
    out.sum_band.add(acc.value() / w.primitive(m));
  }
  return out;
}

BlockConstruction block_ellinfty_construction(const Weight& w, double lambda, std::size_t K) {
  if (!(lambda > 1.0)) throw std::invalid_argument("block_ellinfty_construction: lambda must be > 1");
  if (K == 0) throw std::invalid_argument("block_ellinfty_construction: K must be >= 1");

  BlockConstruction out;
  CompensatedSum chosen;
  double record = 0.0;
  for (std::size_t n = 1; n <= w.size() && out.ends.size() < K; ++n) {
    const double ratio = static_cast<double>(n) / w.primitive(n);
    const bool at_record = ratio >= record;
    record = std::max(record, ratio);
    if (at_record && chosen.value() <= (lambda - 1.0) * w.primitive(n)) {
      out.ends.push_back(n);
      chosen.add(w.primitive(n));
    }
  }
  if (out.ends.size() < K) {
    throw HorizonExhausted("block_ellinfty_construction: found " + std::to_string(out.ends.size()) +
                           " of " + std::to_string(K) + " blocks within horizon " +
                           std::to_string(w.size()));
  }

  const std::size_t length = out.ends.back();
  std::size_t start = 0;
  for (std::size_t m : out.ends) {
    RealSequence x(length, 0.0);
    const double height = w.primitive(m) / static_cast<double>(m);
    std::fill(x.begin() + static_cast<std::ptrdiff_t>(start), x.begin() + static_cast<std::ptrdiff_t>(m),
              height);
    out.blocks.push_back(std::move(x));
    start = m;
  }

  const std::size_t reported = std::min(K, kMaxReportedBlocks);
  std::size_t total = 1;
  for (std::size_t k = 0; k < reported; ++k) total *= 3;
  RealSequence combo(length);
  for (std::size_t code = 0; code < total; ++code) {
    std::fill(combo.begin(), combo.end(), 0.0);
    std::size_t digits = code;
    for (std::size_t k = 0; k < reported; ++k, digits /= 3) {
      const double eps = static_cast<double>(digits % 3) - 1.0;
      if (eps == 0.0) continue;
      const auto& x = out.blocks[k];
      for (std::size_t i = 0; i < length; ++i) combo[i] += eps * x[i];
    }
    if (std::all_of(combo.begin(), combo.end(), [](double c) { return c == 0.0; })) continue;
    out.sign_band.add(marcinkiewicz_norm(combo, w));
    ++out.patterns;
  }
  return out;
}

}  // namespace squeeze::lorentz
