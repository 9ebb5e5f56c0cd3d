#pragma once

// Clifford algebra carried on the exterior algebra of forms Lambda(V*).
//
// The vee product is
//
//   phi v omega = sum_s (-1)^{s(s-1)/2} / s!  G^{a1 b1}..G^{as bs}
//                 eta^s(i_{a1}..i_{as} phi) ^ (i_{b1}..i_{bs} omega)
//
// where G is the bilinear form on covectors (g^{-1}) and eta is the grade
// involution. Both the 1/s! weight and the eta^s sign are needed: dropping
// eta^s breaks associativity already at (e^1 ^ e^2) v e^2, and 1/(s!)^2
// gives (e^1 ^ e^2) v (e^1 ^ e^2) = -1/2 instead of -1 for a Euclidean metric.
// The sum is evaluated in an eigenbasis of G, where it collapses to sorted
// index sets weighted by products of eigenvalues.

#include <Eigen/Dense>

#include <memory>

#include "stratafold/exterior.hpp"

namespace stratafold::clifford {

using exterior::Form;
using exterior::LieAlgebra;
using exterior::Multivector;

class MetricSpec {
 public:
  explicit MetricSpec(Eigen::MatrixXd g, double tol = 1e-12);
  static MetricSpec euclidean(int n);
  // diag(-1, +1, ..., +1)
  static MetricSpec lorentzian(int n);

  int dim() const { return static_cast<int>(g_.rows()); }
  const Eigen::MatrixXd& g() const { return g_; }
  int positive() const { return positive_; }
  int negative() const { return negative_; }
  int kernel_dimension() const { return dim() - positive_ - negative_; }
  bool degenerate() const { return kernel_dimension() > 0; }

  // Bilinear form on covectors: g^{-1}, or the pseudo-inverse if degenerate.
  const Eigen::MatrixXd& covector_form() const { return cov_; }
  // Eigen-decomposition covector_form = Q diag(mu) Q^T.
  const Eigen::MatrixXd& frame() const { return q_; }
  const Eigen::VectorXd& frame_weights() const { return mu_; }
  bool diagonal() const { return diagonal_; }

  double covector_product(const Eigen::VectorXd& a, const Eigen::VectorXd& b) const {
    return a.dot(cov_ * b);
  }

  friend bool operator==(const MetricSpec& a, const MetricSpec& b) { return a.g_ == b.g_; }

 private:
  Eigen::MatrixXd g_;
  Eigen::MatrixXd cov_;
  Eigen::MatrixXd q_;
  Eigen::VectorXd mu_;
  int positive_ = 0;
  int negative_ = 0;
  bool diagonal_ = false;
};

class CliffordElement {
 public:
  CliffordElement(Form form, std::shared_ptr<const MetricSpec> metric);

  const Form& form() const { return form_; }
  const MetricSpec& metric() const { return *metric_; }
  const std::shared_ptr<const MetricSpec>& metric_ptr() const { return metric_; }
  int dim() const { return form_.dim(); }

  CliffordElement& operator+=(const CliffordElement& o);
  CliffordElement& operator-=(const CliffordElement& o);
  friend CliffordElement operator+(CliffordElement a, const CliffordElement& b) { return a += b; }
  friend CliffordElement operator-(CliffordElement a, const CliffordElement& b) { return a -= b; }
  friend CliffordElement operator*(double s, CliffordElement a) {
    a.form_ *= s;
    return a;
  }

  void check_same(const CliffordElement& o) const;

 private:
  Form form_;
  std::shared_ptr<const MetricSpec> metric_;
};

// Grade involution: multiplies the grade-k part by (-1)^k.
Form grade_involution(const Form& a);

Form vee_product(const MetricSpec& m, const Form& a, const Form& b);
CliffordElement vee_product(const CliffordElement& a, const CliffordElement& b);

// Hodge star against the volume form sqrt|det g| e^1 ^ .. ^ e^n.
Form hodge_star(const Form& a, const MetricSpec& m);

// delta a = (-1)^{n-k} (-1)^{#negative} * d * a on the grade-k part.
Form codifferential(const Form& a, const LieAlgebra& alg, const MetricSpec& m);

// D = d + delta.
Form dirac_operator(const Form& a, const LieAlgebra& alg, const MetricSpec& m);
CliffordElement dirac_operator(const CliffordElement& a, const LieAlgebra& alg);

// d delta + delta d.
Form laplacian(const Form& a, const LieAlgebra& alg, const MetricSpec& m);

}  // namespace stratafold::clifford
