#include "squeeze/basis.hpp"

#include <algorithm>
#include <stdexcept>

namespace squeeze {

Basis::Basis(std::string name, Eigen::MatrixXd vectors, Eigen::MatrixXd duals, NormOracle ambient,
             std::optional<NormOracle> dual_ambient)
    : name_(std::move(name)),
      vectors_(std::move(vectors)),
      duals_(std::move(duals)),
      ambient_(std::move(ambient)),
      dual_ambient_(std::move(dual_ambient)) {
  if (vectors_.cols() == 0) throw std::invalid_argument("Basis '" + name_ + "': no vectors");
  if (vectors_.rows() != duals_.rows() || vectors_.cols() != duals_.cols()) {
    throw std::invalid_argument("Basis '" + name_ + "': vectors and duals have different shapes");
  }
  if (static_cast<std::size_t>(vectors_.rows()) != ambient_.dim()) {
    throw std::invalid_argument("Basis '" + name_ + "': ambient dimension does not match the vectors");
  }
  if (dual_ambient_ && dual_ambient_->dim() != ambient_.dim()) {
    throw std::invalid_argument("Basis '" + name_ + "': dual ambient dimension mismatch");
  }
  const Eigen::MatrixXd gram = duals_.transpose() * vectors_;
  const Eigen::MatrixXd defect = gram - Eigen::MatrixXd::Identity(gram.rows(), gram.cols());
  const double worst = defect.cwiseAbs().maxCoeff();
  if (!(worst <= kBiorthogonalityTol)) {
    throw std::invalid_argument("Basis '" + name_ + "': biorthogonality defect " + std::to_string(worst));
  }
}

Basis Basis::with_auto_gram(std::string name, Eigen::MatrixXd vectors, NormOracle ambient,
                            std::optional<NormOracle> dual_ambient) {
  if (vectors.rows() != vectors.cols()) {
    throw std::invalid_argument("Basis '" + name + "': auto-gram needs as many vectors as dimensions");
  }
  const Eigen::FullPivLU<Eigen::MatrixXd> lu(vectors.transpose());
  if (!lu.isInvertible()) {
    throw std::invalid_argument("Basis '" + name + "': vector matrix is singular");
  }
  Eigen::MatrixXd duals = lu.solve(Eigen::MatrixXd::Identity(vectors.rows(), vectors.cols()));
  return Basis(std::move(name), std::move(vectors), std::move(duals), std::move(ambient),
               std::move(dual_ambient));
}

std::pair<double, double> Basis::semi_normalization() const {
  double lo = kInf;
  double hi = 0.0;
  for (std::size_t n = 0; n < size(); ++n) {
    const double v = ambient_(vector(n));
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  return {lo, hi};
}

Eigen::VectorXd Basis::synthesize(std::span<const double> coeffs) const {
  if (coeffs.size() != size()) {
    throw std::invalid_argument("Basis::synthesize: expected " + std::to_string(size()) + " coefficients");
  }
  const Eigen::Map<const Eigen::VectorXd> a(coeffs.data(), static_cast<Eigen::Index>(coeffs.size()));
  return vectors_ * a;
}

}  // namespace squeeze
