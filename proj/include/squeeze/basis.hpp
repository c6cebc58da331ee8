#pragma once

// Finite biorthogonal systems (x_n, x*_n) in a normed R^N.

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "squeeze/norm_oracle.hpp"

namespace squeeze {

/// Largest |<x_n, x*_k> - [n == k]| accepted by the Basis constructor.
inline constexpr double kBiorthogonalityTol = 1e-10;

/// M vectors and M functionals in R^N, stored as the columns of two N x M
/// matrices, with <x_n, x*_k> = [n == k].
class Basis {
 public:
  Basis(std::string name, Eigen::MatrixXd vectors, Eigen::MatrixXd duals, NormOracle ambient,
        std::optional<NormOracle> dual_ambient = std::nullopt);

  /// Solves for the functionals; requires a square invertible vector matrix.
  static Basis with_auto_gram(std::string name, Eigen::MatrixXd vectors, NormOracle ambient,
                              std::optional<NormOracle> dual_ambient = std::nullopt);

  const std::string& name() const { return name_; }
  /// Number of basis vectors M.
  std::size_t size() const { return static_cast<std::size_t>(vectors_.cols()); }
  /// Ambient dimension N.
  std::size_t dim() const { return static_cast<std::size_t>(vectors_.rows()); }

  const Eigen::MatrixXd& vectors() const { return vectors_; }
  const Eigen::MatrixXd& duals() const { return duals_; }
  /// 0-based column accessors.
  Eigen::VectorXd vector(std::size_t n) const { return vectors_.col(static_cast<Eigen::Index>(n)); }
  Eigen::VectorXd dual(std::size_t n) const { return duals_.col(static_cast<Eigen::Index>(n)); }

  const NormOracle& ambient() const { return ambient_; }
  const std::optional<NormOracle>& dual_ambient() const { return dual_ambient_; }

  /// (min_n ||x_n||, max_n ||x_n||).
  std::pair<double, double> semi_normalization() const;

  /// sum_n a_n x_n.
  Eigen::VectorXd synthesize(std::span<const double> coeffs) const;

 private:
  std::string name_;
  Eigen::MatrixXd vectors_;
  Eigen::MatrixXd duals_;
  NormOracle ambient_;
  std::optional<NormOracle> dual_ambient_;
};

}  // namespace squeeze
