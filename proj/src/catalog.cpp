#include "squeeze/catalog.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include "descriptor_util.hpp"

namespace squeeze::catalog {

namespace {

using Index = Eigen::Index;

std::string exponent_text(double p) { return std::isinf(p) ? "inf" : detail::format_number(p); }

Eigen::MatrixXd rows_to_columns(const nlohmann::json& rows, std::size_t dim, const char* field) {
  if (!rows.is_array() || rows.empty()) {
    throw std::invalid_argument(std::string("basis JSON: '") + field + "' must be a nonempty array");
  }
  Eigen::MatrixXd out(static_cast<Index>(dim), static_cast<Index>(rows.size()));
  for (std::size_t c = 0; c < rows.size(); ++c) {
    const auto& row = rows[c];
    if (!row.is_array() || row.size() != dim) {
      throw std::invalid_argument(std::string("basis JSON: every entry of '") + field + "' needs " +
                                  std::to_string(dim) + " numbers");
    }
    for (std::size_t r = 0; r < dim; ++r) out(static_cast<Index>(r), static_cast<Index>(c)) = row[r].get<double>();
  }
  return out;
}

}  // namespace

Basis canonical(double p, std::size_t M) {
  if (M == 0) throw std::invalid_argument("canonical basis: M must be >= 1");
  const Eigen::MatrixXd id = Eigen::MatrixXd::Identity(static_cast<Index>(M), static_cast<Index>(M));
  const NormOracle ambient = NormOracle::lp(p, M);
  return Basis("canonical:" + exponent_text(p) + ":" + std::to_string(M), id, id, ambient, ambient.dual());
}

Basis remark(std::size_t M) {
  if (M == 0) throw std::invalid_argument("remark basis: M must be >= 1");
  const Index n = static_cast<Index>(M + 1);
  Eigen::MatrixXd v = Eigen::MatrixXd::Zero(n, static_cast<Index>(M));
  Eigen::MatrixXd d = Eigen::MatrixXd::Zero(n, static_cast<Index>(M));
  for (Index k = 0; k < static_cast<Index>(M); ++k) {
    v(0, k) = 1.0;
    v(k + 1, k) = 1.0;
    d(k + 1, k) = 1.0;
  }
  const NormOracle ambient = NormOracle::lp(2.0, M + 1);
  return Basis("remark:" + std::to_string(M), v, d, ambient, ambient);
}

Basis difference(std::size_t M, double p) {
  if (M == 0) throw std::invalid_argument("difference basis: M must be >= 1");
  const Index n = static_cast<Index>(M);
  Eigen::MatrixXd v = Eigen::MatrixXd::Zero(n, n);
  Eigen::MatrixXd d = Eigen::MatrixXd::Zero(n, n);
  for (Index k = 0; k < n; ++k) {
    v(k, k) = 1.0;
    if (k + 1 < n) v(k + 1, k) = -1.0;
    for (Index j = 0; j <= k; ++j) d(j, k) = 1.0;
  }
  const NormOracle ambient = NormOracle::lp(p, M);
  return Basis("difference:" + std::to_string(M) + ":" + exponent_text(p), v, d, ambient, ambient.dual());
}

Basis lorentz_units(std::size_t M, double q, std::string_view weight) {
  if (M == 0) throw std::invalid_argument("lorentz basis: M must be >= 1");
  const lorentz::LorentzSpec spec(q, seqreg::make_weight(weight, M));
  const NormOracle ambient = NormOracle::lorentz(spec, M);
  const Eigen::MatrixXd id = Eigen::MatrixXd::Identity(static_cast<Index>(M), static_cast<Index>(M));
  return Basis("lorentz:" + std::to_string(M) + ":" + exponent_text(q) + ":" + std::string(weight), id, id,
               ambient);
}

Basis basis_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("ambient") || !j.contains("vectors")) {
    throw std::invalid_argument("basis JSON: 'ambient' and 'vectors' are required");
  }
  NormOracle ambient = parse_norm(j.at("ambient"));
  const std::string name = j.value("name", std::string("custom"));
  Eigen::MatrixXd v = rows_to_columns(j.at("vectors"), ambient.dim(), "vectors");
  const auto dual_ambient = ambient.dual();
  if (!j.contains("duals") || (j.at("duals").is_string() && j.at("duals").get<std::string>() == "auto-gram")) {
    return Basis::with_auto_gram(name, std::move(v), std::move(ambient), dual_ambient);
  }
  Eigen::MatrixXd d = rows_to_columns(j.at("duals"), ambient.dim(), "duals");
  return Basis(name, std::move(v), std::move(d), std::move(ambient), dual_ambient);
}

Basis make_basis(std::string_view descriptor) {
  if (descriptor.empty()) throw std::invalid_argument("empty basis descriptor");
  if (descriptor.front() == '{') return basis_from_json(nlohmann::json::parse(descriptor));
  if (descriptor.ends_with(".json")) {
    std::ifstream in{std::string(descriptor)};
    if (!in) throw std::invalid_argument("cannot open basis file '" + std::string(descriptor) + "'");
    return basis_from_json(nlohmann::json::parse(in));
  }
  const auto [name, rest] = detail::split_descriptor(descriptor);
  if (name == "canonical") {
    const auto [p, m] = detail::split_descriptor(rest);
    return canonical(detail::parse_double(p), detail::parse_size(m));
  }
  if (name == "remark") return remark(detail::parse_size(rest));
  if (name == "difference") {
    const auto [m, p] = detail::split_descriptor(rest);
    return difference(detail::parse_size(m), p.empty() ? 2.0 : detail::parse_double(p));
  }
  if (name == "lorentz") {
    const auto [m, tail] = detail::split_descriptor(rest);
    const auto [q, weight] = detail::split_descriptor(tail);
    if (weight.empty()) throw std::invalid_argument("lorentz basis: expected lorentz:<M>:<q>:<weight>");
    return lorentz_units(detail::parse_size(m), detail::parse_double(q), weight);
  }
  throw std::invalid_argument("unknown basis '" + std::string(descriptor) + "'");
}

std::vector<std::pair<std::string, std::string>> catalog_list() {
  return {
      {"canonical:<p>:<M>", "unit vectors of l_p^M, p in {1, 1.5, 2, 4, inf} or any p >= 1"},
      {"remark:<M>", "x_n = e_0 + e_n in l_2^{M+1} with x*_n = e*_n"},
      {"difference:<M>[:<p>]", "x_n = e_n - e_{n+1}, x_M = e_M; functionals are partial sums"},
      {"lorentz:<M>:<q>:<weight>", "unit vectors of d_{1,q}(w) on R^M"},
      {"{json}", "explicit basis: ambient, vectors, duals or \"auto-gram\""},
  };
}

}  // namespace squeeze::catalog
