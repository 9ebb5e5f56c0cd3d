#pragma once

// Probability simplex with the Fisher-Rao metric g_jk = delta_jk / (4 p_j)
// and the square-root embedding onto the positive octant of the unit sphere.

#include <Eigen/Dense>

#include "stratafold/errors.hpp"

namespace stratafold::statgeom {

class ProbabilityVector {
 public:
  // Entries >= 0 summing to 1 within tol.
  explicit ProbabilityVector(Eigen::VectorXd p, double tol = 1e-12);
  static ProbabilityVector uniform(int n);

  int size() const { return static_cast<int>(p_.size()); }
  const Eigen::VectorXd& values() const { return p_; }
  double operator[](int j) const { return p_[j]; }
  bool interior() const { return p_.minCoeff() > 0.0; }

 private:
  Eigen::VectorXd p_;
};

// BoundaryError when p_i or p_j vanishes.
double fisher_metric(const ProbabilityVector& p, int i, int j);
double fisher_inner(const ProbabilityVector& p, const Eigen::VectorXd& u, const Eigen::VectorXd& v);

// x_j = sqrt(p_j)
Eigen::VectorXd sqrt_embed(const ProbabilityVector& p);
// Differential of sqrt_embed: diag(1 / (2 sqrt(p_j))).
Eigen::VectorXd sqrt_embed_jacobian(const ProbabilityVector& p);

// |g(u, v) - <D phi u, D phi v>| for tangent vectors u, v (entries summing to zero).
double pullback_residual(const ProbabilityVector& p, const Eigen::VectorXd& u, const Eigen::VectorXd& v);

}  // namespace stratafold::statgeom
