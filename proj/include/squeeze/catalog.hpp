#pragma once

// Named bases used by the tests, the acceptance suite and the CLI.

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "squeeze/basis.hpp"

namespace squeeze::catalog {

/// Unit vectors of ell_p^M.
Basis canonical(double p, std::size_t M);

/// x_n = e_0 + e_n (n = 1..M) in ell_2^{M+1}, with x*_n = e*_n.
Basis remark(std::size_t M);

/// x_n = e_n - e_{n+1} (n < M), x_M = e_M in ell_p^M; the functionals are the
/// partial-sum functionals sum_{j <= n} e*_j.
Basis difference(std::size_t M, double p = 2.0);

/// Unit vectors of d_{1,q}(w) restricted to R^M.
Basis lorentz_units(std::size_t M, double q, std::string_view weight);

/// {"ambient": norm, "vectors": [[...]], "duals": [[...]] | "auto-gram",
///  "name": optional}. Vectors are listed one per row.
Basis basis_from_json(const nlohmann::json& j);

/// "canonical:<p>:<M>", "remark:<M>", "difference:<M>[:<p>]",
/// "lorentz:<M>:<q>:<weight>", inline JSON, or a path to a JSON file.
Basis make_basis(std::string_view descriptor);

/// Descriptor templates with a one-line description each.
std::vector<std::pair<std::string, std::string>> catalog_list();

}  // namespace squeeze::catalog
