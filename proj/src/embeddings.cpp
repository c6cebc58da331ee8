#include "squeeze/embeddings.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

#include "squeeze/lorentz.hpp"
#include "squeeze/numeric.hpp"
#include "squeeze/parallel.hpp"
#include "squeeze/sampling.hpp"

namespace squeeze::embeddings {

namespace {

using Index = Eigen::Index;

constexpr double kModulusFloor = 1e-12;

seqreg::Weight power_primitive(const seqreg::Weight& w, double q) {
  std::vector<double> s(w.size());
  for (std::size_t n = 1; n <= w.size(); ++n) s[n - 1] = std::pow(w.primitive(n), q);
  return seqreg::Weight::from_primitive(s);
}

/// ||sum a_n x_n|| / ||a||_{1,q,w} over the sweep.
RatioBand lower_band(const Basis& basis, double q, const seqreg::Weight& w, const EmbeddingOptions& options) {
  const auto ratios = parallel_map(options.samples, [&](std::size_t i) {
    const auto a = sweep_sample(i, basis.size(), options.seed);
    const double denom = lorentz::lorentz_norm(a, w, q);
    return denom == 0.0 ? -1.0 : basis.ambient()(basis.synthesize(a)) / denom;
  });
  RatioBand band;
  for (double r : ratios) {
    if (r >= 0.0) band.add(r);
  }
  return band;
}

nlohmann::json band_json(const RatioBand& b) {
  if (b.empty()) return nullptr;
  return {{"lo", b.lo}, {"hi", b.hi}, {"count", b.count}};
}

nlohmann::json index_json(double v) {
  if (std::isinf(v)) return "inf";
  return v;
}

}  // namespace

std::vector<DyadicLevel> dyadic_decomposition(std::span<const double> coeffs) {
  double t = 0.0;
  for (double a : coeffs) t = std::max(t, std::abs(a));
  if (t == 0.0) return {};
  std::map<int, std::vector<std::size_t>> levels;
  for (std::size_t n : greedy::greedy_ordering(coeffs)) {
    const double x = std::abs(coeffs[n]);
    if (x == 0.0) break;
    int k = std::max(1, std::ilogb(t) - std::ilogb(x));
    while (x <= std::ldexp(t, -k)) ++k;
    while (k > 1 && x > std::ldexp(t, -k + 1)) --k;
    levels[k].push_back(n);
  }
  std::vector<DyadicLevel> out;
  out.reserve(levels.size());
  for (auto& [k, idx] : levels) out.push_back({k, std::move(idx)});
  return out;
}

std::vector<convexity::Vector> level_vectors(const Basis& basis, std::span<const double> coeffs,
                                             std::span<const DyadicLevel> levels) {
  if (coeffs.size() != basis.size()) throw std::invalid_argument("level_vectors: coefficient count mismatch");
  std::vector<convexity::Vector> out;
  out.reserve(levels.size());
  for (const auto& level : levels) {
    Eigen::VectorXd f = Eigen::VectorXd::Zero(static_cast<Index>(basis.dim()));
    for (std::size_t n : level.indices) f += coeffs[n] * basis.vectors().col(static_cast<Index>(n));
    out.emplace_back(f.data(), f.data() + f.size());
  }
  return out;
}

std::vector<LevelBound> level_norm_bound(const Basis& basis, std::span<const double> coeffs,
                                         std::span<const DyadicLevel> levels, std::span<const double> phi_u) {
  double t = 0.0;
  for (double a : coeffs) t = std::max(t, std::abs(a));
  const auto fs = level_vectors(basis, coeffs, levels);
  std::vector<LevelBound> out;
  out.reserve(levels.size());
  for (std::size_t i = 0; i < levels.size(); ++i) {
    const std::size_t size = levels[i].indices.size();
    if (size > phi_u.size()) throw std::invalid_argument("level_norm_bound: phi_u table too short");
    LevelBound b;
    b.k = levels[i].k;
    b.size = size;
    b.lhs = basis.ambient()(fs[i]);
    b.rhs = std::ldexp(t, -levels[i].k + 1) * phi_u[size - 1];
    b.holds = leq_tol(b.lhs, b.rhs);
    out.push_back(b);
  }
  return out;
}

double abel_tail_sum(int j, int k_max, double q) {
  CompensatedSum acc;
  for (int k = k_max; k >= j; --k) acc.add(std::exp2(-static_cast<double>(k) * q));
  return acc.value();
}

double abel_tail_bound(int j, double q) {
  return std::exp2(-static_cast<double>(j) * q) / -std::expm1(-q * std::log(2.0));
}

LowerEmbedding lower_embedding_check(const Basis& basis, double q, const EmbeddingOptions& options) {
  const std::size_t M = basis.size();
  const auto enum_options = greedy::auto_options(M, M, options.budget, options.phi_samples, options.seed);
  auto fundamental = greedy::weight_from_fundamental(basis, M, enum_options);
  const double C = greedy::quasi_greedy_constant(basis, options.qg_samples, options.seed).value;
  return lower_embedding_check(basis, q, options, fundamental, enum_options.mode == greedy::Mode::exact, C);
}

LowerEmbedding lower_embedding_check(const Basis& basis, double q, const EmbeddingOptions& options,
                                     const greedy::FundamentalWeight& fundamental, bool phi_exact,
                                     double quasi_greedy) {
  if (!(q > 1.0) || std::isinf(q)) throw std::invalid_argument("lower_embedding_check: q must lie in (1, inf)");
  LowerEmbedding out{fundamental, phi_exact, quasi_greedy, 1.0 / (1.0 + quasi_greedy), 0.0, std::nullopt, 0.0,
                     std::nullopt, {}, {}, std::nullopt, 0};
  out.delta = convexity::modulus_estimate(basis.ambient(), out.eps, options.modulus_budget, options.seed).estimate;
  if (out.delta > kModulusFloor) {
    out.constants = convexity::qlaw_constants(std::min(out.delta, 1.0), options.policy, out.eps);
  }

  const seqreg::Weight& wu = out.fundamental.weight;
  const seqreg::Weight wq = power_primitive(wu, q);
  struct Sample {
    double ratio = -1.0;
    double d = 0.0;
    double x_norm = 0.0;
    double direct = 0.0;
  };
  const auto samples = parallel_map(options.samples, [&](std::size_t i) {
    Sample s;
    const auto a = sweep_sample(i, basis.size(), options.seed);
    const double lor = lorentz::lorentz_norm(a, wu, q);
    if (lor == 0.0) return s;
    s.x_norm = basis.ambient()(basis.synthesize(a));
    s.direct = lorentz::lorentz_norm_direct(a, wq, q);
    s.ratio = s.x_norm / lor;
    s.d = s.direct / lor;
    return s;
  });
  for (const auto& s : samples) {
    if (s.ratio < 0.0) continue;
    out.band.add(s.ratio);
    out.D = std::max(out.D, s.d);
  }

  if (!out.constants) {
    out.theory_note = "modulus estimate at eps is zero; K unavailable";
    return out;
  }
  if (q > out.constants->q) {
    out.theory_note = "q exceeds the convexity index " + std::to_string(out.constants->q);
    return out;
  }
  const double shape = std::pow(std::exp2(q) - 1.0, -1.0 / q);
  out.theory_constant = 4.0 * out.constants->K * out.D * shape;
  out.verdict = leq_tol(out.band.hi, *out.theory_constant);
  for (const auto& s : samples) {
    if (s.ratio >= 0.0 && !leq_tol(s.x_norm, 4.0 * out.constants->K * shape * s.direct)) ++out.chain_violations;
  }
  return out;
}

RatioBand upper_embedding_check(const Basis& basis, double r, const seqreg::Weight& w,
                                const EmbeddingOptions& options) {
  if (!(r > 1.0)) throw std::invalid_argument("upper_embedding_check: r must lie in (1, inf]");
  if (w.size() < basis.size()) throw std::invalid_argument("upper_embedding_check: weight shorter than the basis");
  const auto ratios = parallel_map(options.samples, [&](std::size_t i) {
    const auto a = sweep_sample(i, basis.size(), options.seed);
    const Eigen::VectorXd f = basis.synthesize(a);
    const double nf = basis.ambient()(f);
    if (nf == 0.0) return -1.0;
    const auto coeffs = greedy::coefficient_transform(std::span<const double>(f.data(), basis.dim()), basis);
    return lorentz::lorentz_norm(coeffs, w, r) / nf;
  });
  RatioBand band;
  for (double v : ratios) {
    if (v >= 0.0) band.add(v);
  }
  return band;
}

SqueezeReport squeeze_report(const Basis& basis, double q, double r, const SqueezeOptions& options) {
  if (!(q > 1.0) || !(q <= r)) throw std::invalid_argument("squeeze_report: requires 1 < q <= r <= inf");
  SqueezeReport out{basis.name(), q, r, lower_embedding_check(basis, q, options.embedding), {}, {}, 0.0};
  out.upper = upper_embedding_check(basis, r, out.lower.fundamental.weight, options.embedding);

  const std::size_t m_max = std::min(basis.size(), options.lebesgue_m_max);
  const auto table = greedy::lebesgue_table(basis, m_max, options.lebesgue_samples, options.embedding.seed);
  const double exponent = 1.0 / q - (std::isinf(r) ? 0.0 : 1.0 / r);
  CompensatedSum num, den;
  for (std::size_t m = 1; m <= m_max; ++m) {
    LebesgueRow row;
    row.m = m;
    row.lebesgue = table[m - 1];
    if (exponent == 0.0) {
      row.reference = 1.0;
    } else {
      row.reference = m >= 2 ? std::pow(std::log(static_cast<double>(m)), exponent) : 0.0;
    }
    row.delta_gap = lorentz::delta_m(out.lower.fundamental.weight, q, r, m);
    num.add(row.lebesgue * row.reference);
    den.add(row.reference * row.reference);
    out.lebesgue.push_back(row);
  }
  out.fit_constant = den.value() > 0.0 ? num.value() / den.value() : 0.0;
  for (auto& row : out.lebesgue) row.fitted = out.fit_constant * row.reference;
  return out;
}

nlohmann::json to_json(const SqueezeReport& report) {
  const auto& lower = report.lower;
  nlohmann::json j;
  j["basis"] = report.basis;
  j["q"] = index_json(report.q);
  j["r"] = index_json(report.r);
  j["weight"] = std::vector<double>(lower.fundamental.weight.weights().begin(),
                                    lower.fundamental.weight.weights().end());
  j["phi_u"] = lower.fundamental.phi_u;
  j["phi_u_mode"] = lower.phi_exact ? "exact" : "sampled";
  j["degenerate_weights"] = lower.fundamental.degenerate;

  nlohmann::json lj;
  lj["quasi_greedy_constant"] = lower.quasi_greedy;
  lj["eps"] = lower.eps;
  lj["modulus_estimate"] = lower.delta;
  if (lower.constants) {
    const auto& c = *lower.constants;
    lj["constants"] = {{"lambda", c.lambda}, {"q", c.q}, {"eta", c.eta}, {"K", c.K}};
  } else {
    lj["constants"] = nullptr;
  }
  lj["D_empirical"] = lower.D;
  lj["theory_constant"] = lower.theory_constant ? nlohmann::json(*lower.theory_constant) : nlohmann::json(nullptr);
  if (!lower.theory_note.empty()) lj["theory_note"] = lower.theory_note;
  lj["band"] = band_json(lower.band);
  lj["verdict"] = lower.verdict ? nlohmann::json(*lower.verdict) : nlohmann::json(nullptr);
  lj["chain_violations"] = lower.chain_violations;
  j["lower"] = lj;
  j["upper"] = {{"band", band_json(report.upper)}};

  nlohmann::json rows = nlohmann::json::array();
  for (const auto& row : report.lebesgue) {
    rows.push_back({{"m", row.m},
                    {"lebesgue_lower", row.lebesgue},
                    {"reference", row.reference},
                    {"fitted", row.fitted},
                    {"delta_gap", row.delta_gap}});
  }
  j["lebesgue"] = {{"fit_constant", report.fit_constant}, {"rows", rows}};
  return j;
}

std::vector<GridCell> grid_sweep(const Basis& basis, std::span<const double> qs, std::span<const double> rs,
                                 const EmbeddingOptions& options) {
  const std::size_t M = basis.size();
  const auto enum_options = greedy::auto_options(M, M, options.budget, options.phi_samples, options.seed);
  const auto fundamental = greedy::weight_from_fundamental(basis, M, enum_options);
  std::vector<GridCell> out;
  for (double q : qs) {
    if (!(q > 1.0)) throw std::invalid_argument("grid_sweep: q values must be > 1");
    const RatioBand lower = lower_band(basis, q, fundamental.weight, options);
    for (double r : rs) {
      if (r < q) continue;
      out.push_back({q, r, lower, upper_embedding_check(basis, r, fundamental.weight, options)});
    }
  }
  return out;
}

}  // namespace squeeze::embeddings
