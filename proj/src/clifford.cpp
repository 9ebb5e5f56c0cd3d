#include "stratafold/clifford.hpp"

#include <cmath>

namespace stratafold::clifford {

using exterior::Blade;
using exterior::grade_of;
using exterior::wedge_sign;

MetricSpec::MetricSpec(Eigen::MatrixXd g, double tol) : g_(std::move(g)) {
  if (g_.rows() != g_.cols() || g_.rows() == 0) throw InvalidSpec("metric must be square and non-empty");
  if (g_.rows() > exterior::kMaxDim) throw InvalidSpec("metric dimension too large");
  if (!g_.allFinite()) throw InvalidSpec("metric has non-finite entries");
  const double scale = std::max(1.0, g_.cwiseAbs().maxCoeff());
  if ((g_ - g_.transpose()).cwiseAbs().maxCoeff() > tol * scale)
    throw InvalidSpec("metric must be symmetric");

  const int n = dim();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(g_);
  const Eigen::VectorXd& ev = es.eigenvalues();
  const double cut = tol * std::max(1.0, ev.cwiseAbs().maxCoeff());
  for (int i = 0; i < n; ++i) {
    if (ev[i] > cut) ++positive_;
    if (ev[i] < -cut) ++negative_;
  }

  const Eigen::MatrixXd off = g_ - Eigen::MatrixXd(g_.diagonal().asDiagonal());
  diagonal_ = off.cwiseAbs().maxCoeff() == 0.0;
  if (diagonal_) {
    q_ = Eigen::MatrixXd::Identity(n, n);
    mu_.resize(n);
    for (int i = 0; i < n; ++i) mu_[i] = std::abs(g_(i, i)) > cut ? 1.0 / g_(i, i) : 0.0;
  } else {
    q_ = es.eigenvectors();
    mu_.resize(n);
    for (int i = 0; i < n; ++i) mu_[i] = std::abs(ev[i]) > cut ? 1.0 / ev[i] : 0.0;
  }
  cov_ = q_ * mu_.asDiagonal() * q_.transpose();
}

MetricSpec MetricSpec::euclidean(int n) { return MetricSpec(Eigen::MatrixXd::Identity(n, n)); }

MetricSpec MetricSpec::lorentzian(int n) {
  Eigen::MatrixXd g = Eigen::MatrixXd::Identity(n, n);
  g(0, 0) = -1.0;
  return MetricSpec(std::move(g));
}

CliffordElement::CliffordElement(Form form, std::shared_ptr<const MetricSpec> metric)
    : form_(std::move(form)), metric_(std::move(metric)) {
  if (!metric_) throw InvalidSpec("Clifford element needs a metric");
  if (metric_->dim() != form_.dim()) throw DimensionMismatch("form and metric dimensions differ");
}

void CliffordElement::check_same(const CliffordElement& o) const {
  if (metric_ != o.metric_ && !(*metric_ == *o.metric_))
    throw DimensionMismatch("Clifford elements over different metrics");
}

CliffordElement& CliffordElement::operator+=(const CliffordElement& o) {
  check_same(o);
  form_ += o.form_;
  return *this;
}

CliffordElement& CliffordElement::operator-=(const CliffordElement& o) {
  check_same(o);
  form_ -= o.form_;
  return *this;
}

Form grade_involution(const Form& a) {
  Form out(a.dim());
  for (const auto& [b, c] : a.terms()) out.add(b, (grade_of(b) & 1) ? -c : c);
  return out;
}

namespace {

// e^a -> sum_c M(a, c) f^c, extended multiplicatively.
Form change_frame(const Form& a, const Eigen::MatrixXd& M) {
  const int n = a.dim();
  std::vector<Form> images;
  images.reserve(n);
  for (int i = 0; i < n; ++i) images.push_back(Form::vector(M.row(i).transpose()));
  Form out(n);
  for (const auto& [blade, coeff] : a.terms()) {
    Form term = Form::scalar(n, coeff);
    for (int i : exterior::indices_of(blade)) term = exterior::wedge(term, images[i]);
    out += term;
  }
  return out;
}

// Sign picked up by i_{a1}(i_{a2}(...i_{as}(e^I))) for A = {a1 < ... < as} inside I.
int nested_contraction_sign(Blade I, Blade A) {
  int sign = 1;
  while (A != 0) {
    const int top = 31 - std::countl_zero(A);
    const Blade bit = Blade{1} << top;
    if (std::popcount(I & (bit - 1)) & 1) sign = -sign;
    I &= ~bit;
    A &= ~bit;
  }
  return sign;
}

// Only the contraction set A = I & J survives the wedge on a pair of blades.
Form vee_in_frame(const Form& a, const Form& b, const Eigen::VectorXd& mu) {
  Form out(a.dim());
  for (const auto& [I, ca] : a.terms())
    for (const auto& [J, cb] : b.terms()) {
      const Blade A = I & J;
      double weight = 1.0;
      for (Blade r = A; r != 0; r &= r - 1) weight *= mu[std::countr_zero(r)];
      if (weight == 0.0) continue;
      const int s = grade_of(A);
      const Blade left = I & ~A, right = J & ~A;
      int sign = ((s * (s - 1) / 2) & 1) ? -1 : 1;
      if ((s * grade_of(left)) & 1) sign = -sign;
      sign *= nested_contraction_sign(I, A) * nested_contraction_sign(J, A);
      sign *= wedge_sign(left, right);
      out.add(left | right, sign * weight * ca * cb);
    }
  return out;
}

void require_nondegenerate(const MetricSpec& m) {
  if (m.degenerate()) throw DegenerateMetric("Hodge star needs a nondegenerate metric");
}

}  // namespace

Form vee_product(const MetricSpec& m, const Form& a, const Form& b) {
  a.check_same(b);
  if (a.dim() != m.dim()) throw DimensionMismatch("vee_product: metric dimension differs");
  if (m.diagonal()) return vee_in_frame(a, b, m.frame_weights());
  const Eigen::MatrixXd& Q = m.frame();
  const Form fa = change_frame(a, Q);
  const Form fb = change_frame(b, Q);
  return change_frame(vee_in_frame(fa, fb, m.frame_weights()), Q.transpose());
}

CliffordElement vee_product(const CliffordElement& a, const CliffordElement& b) {
  a.check_same(b);
  return CliffordElement(vee_product(a.metric(), a.form(), b.form()), a.metric_ptr());
}

Form hodge_star(const Form& a, const MetricSpec& m) {
  require_nondegenerate(m);
  const int n = m.dim();
  if (a.dim() != n) throw DimensionMismatch("hodge_star: metric dimension differs");
  const Eigen::MatrixXd& G = m.covector_form();
  const double volume = std::sqrt(std::abs(m.g().determinant()));
  const Blade full = (Blade{1} << n) - 1;
  Form out(n);
  for (const auto& [I, coeff] : a.terms()) {
    const int k = grade_of(I);
    const std::vector<int> rows = exterior::indices_of(I);
    for (Blade B = 0; B <= full; ++B) {
      if (grade_of(B) != k) continue;
      double minor = 1.0;
      if (k > 0) {
        const std::vector<int> cols = exterior::indices_of(B);
        Eigen::MatrixXd sub(k, k);
        for (int r = 0; r < k; ++r)
          for (int c = 0; c < k; ++c) sub(r, c) = G(rows[r], cols[c]);
        minor = sub.determinant();
      }
      if (minor == 0.0) continue;
      const Blade comp = full & ~B;
      out.add(comp, coeff * minor * volume * wedge_sign(B, comp));
    }
  }
  return out;
}

Form codifferential(const Form& a, const LieAlgebra& alg, const MetricSpec& m) {
  require_nondegenerate(m);
  const int n = m.dim();
  if (alg.dim() != n) throw DimensionMismatch("codifferential: algebra and metric dimensions differ");
  Form out(n);
  for (int k = 1; k <= n; ++k) {
    const Form part = a.part(k);
    if (part.is_zero()) continue;
    const int exponent = (n - k) + m.negative();
    const Form image = hodge_star(exterior::chevalley_d(alg, hodge_star(part, m)), m);
    out += (exponent & 1) ? -image : image;
  }
  return out;
}

Form dirac_operator(const Form& a, const LieAlgebra& alg, const MetricSpec& m) {
  return exterior::chevalley_d(alg, a) + codifferential(a, alg, m);
}

CliffordElement dirac_operator(const CliffordElement& a, const LieAlgebra& alg) {
  return CliffordElement(dirac_operator(a.form(), alg, a.metric()), a.metric_ptr());
}

Form laplacian(const Form& a, const LieAlgebra& alg, const MetricSpec& m) {
  return exterior::chevalley_d(alg, codifferential(a, alg, m)) +
         codifferential(exterior::chevalley_d(alg, a), alg, m);
}

}  // namespace stratafold::clifford
