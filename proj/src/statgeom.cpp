#include "stratafold/statgeom.hpp"

#include <cmath>

namespace stratafold::statgeom {

namespace {

void require_interior(const ProbabilityVector& p) {
  if (!p.interior()) throw BoundaryError("Fisher metric is undefined on a face of the simplex");
}

void require_tangent(const ProbabilityVector& p, const Eigen::VectorXd& u) {
  if (u.size() != p.size()) throw DimensionMismatch("tangent vector length differs from p");
  if (!u.allFinite()) throw InvalidSpec("tangent vector has non-finite entries");
  const double scale = std::max(1.0, u.cwiseAbs().maxCoeff());
  if (std::abs(u.sum()) > 1e-10 * scale) throw DomainError("tangent vector entries must sum to zero");
}

}  // namespace

ProbabilityVector::ProbabilityVector(Eigen::VectorXd p, double tol) : p_(std::move(p)) {
  if (p_.size() == 0) throw InvalidSpec("probability vector is empty");
  if (!p_.allFinite()) throw InvalidSpec("probability vector has non-finite entries");
  if ((p_.array() < 0.0).any()) throw InvalidSpec("probabilities must be nonnegative");
  if (std::abs(p_.sum() - 1.0) > tol) throw InvalidSpec("probabilities must sum to 1");
}

ProbabilityVector ProbabilityVector::uniform(int n) {
  if (n < 1) throw InvalidSpec("need at least one outcome");
  return ProbabilityVector(Eigen::VectorXd::Constant(n, 1.0 / n));
}

double fisher_metric(const ProbabilityVector& p, int i, int j) {
  if (i < 0 || j < 0 || i >= p.size() || j >= p.size()) throw DomainError("index out of range");
  if (p[i] == 0.0 || p[j] == 0.0) throw BoundaryError("Fisher metric is undefined on a face of the simplex");
  return i == j ? 1.0 / (4.0 * p[i]) : 0.0;
}

double fisher_inner(const ProbabilityVector& p, const Eigen::VectorXd& u, const Eigen::VectorXd& v) {
  require_interior(p);
  require_tangent(p, u);
  require_tangent(p, v);
  return (u.cwiseProduct(v).array() / (4.0 * p.values().array())).sum();
}

Eigen::VectorXd sqrt_embed(const ProbabilityVector& p) { return p.values().cwiseSqrt(); }

Eigen::VectorXd sqrt_embed_jacobian(const ProbabilityVector& p) {
  require_interior(p);
  return (2.0 * p.values().cwiseSqrt()).cwiseInverse();
}

double pullback_residual(const ProbabilityVector& p, const Eigen::VectorXd& u, const Eigen::VectorXd& v) {
  const double g = fisher_inner(p, u, v);
  const Eigen::VectorXd jac = sqrt_embed_jacobian(p);
  const double euclid = jac.cwiseProduct(u).dot(jac.cwiseProduct(v));
  return std::abs(g - euclid);
}

}  // namespace stratafold::statgeom
