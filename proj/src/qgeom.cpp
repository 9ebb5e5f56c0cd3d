#include "stratafold/qgeom.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <mutex>

namespace stratafold::qgeom {

namespace {

constexpr Complex kI(0.0, 1.0);

double spectral_norm(const Eigen::VectorXd& ev) { return ev.size() == 0 ? 0.0 : ev.cwiseAbs().maxCoeff(); }

Eigen::VectorXd hermitian_eigenvalues(const Matrix& m) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(m, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) throw DomainError("Hermitian eigensolve failed");
  return es.eigenvalues();
}

void require_same(int a, int b) {
  if (a != b) throw DimensionMismatch("operators of different dimension");
}

Matrix commutator(const Matrix& a, const Matrix& b) { return a * b - b * a; }
Matrix anticommutator(const Matrix& a, const Matrix& b) { return a * b + b * a; }

int matrix_rank(const Eigen::MatrixXd& m, double rel_tol) {
  if (m.size() == 0) return 0;
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(m);
  const Eigen::VectorXd& s = svd.singularValues();
  if (s.size() == 0 || s[0] == 0.0) return 0;
  int r = 0;
  for (int i = 0; i < s.size(); ++i)
    if (s[i] > rel_tol * s[0]) ++r;
  return r;
}

}  // namespace

// --- HermitianOperator ---------------------------------------------------------

HermitianOperator::HermitianOperator(const Matrix& a, double tol) {
  if (a.rows() != a.cols() || a.rows() == 0) throw InvalidSpec("observable must be a non-empty square matrix");
  if (!a.allFinite()) throw InvalidSpec("observable has non-finite entries");
  const double scale = std::max(1.0, a.cwiseAbs().maxCoeff());
  if ((a - a.adjoint()).cwiseAbs().maxCoeff() > tol * scale) throw InvalidSpec("matrix is not Hermitian");
  a_ = 0.5 * (a + a.adjoint());
}

HermitianOperator HermitianOperator::identity(int n) { return HermitianOperator(Matrix::Identity(n, n)); }
HermitianOperator HermitianOperator::zero(int n) { return HermitianOperator(Matrix::Zero(n, n)); }

HermitianOperator HermitianOperator::pauli(int k) {
  Matrix m(2, 2);
  switch (k) {
    case 0: m << 1, 0, 0, 1; break;
    case 1: m << 0, 1, 1, 0; break;
    case 2: m << 0, -kI, kI, 0; break;
    case 3: m << 1, 0, 0, -1; break;
    default: throw DomainError("Pauli index must be 0..3");
  }
  return HermitianOperator(m);
}

HermitianOperator operator+(const HermitianOperator& a, const HermitianOperator& b) {
  require_same(a.dim(), b.dim());
  return hermitian_part(a.a_ + b.a_);
}

HermitianOperator operator-(const HermitianOperator& a, const HermitianOperator& b) {
  require_same(a.dim(), b.dim());
  return hermitian_part(a.a_ - b.a_);
}

HermitianOperator operator*(double s, const HermitianOperator& a) { return hermitian_part(s * a.a_); }

HermitianOperator hermitian_part(const Matrix& m) {
  if (m.rows() != m.cols()) throw DimensionMismatch("hermitian_part needs a square matrix");
  return HermitianOperator(0.5 * (m + m.adjoint()), 1.0);
}

// --- ObservableBasis -----------------------------------------------------------

ObservableBasis::ObservableBasis(int n) : n_(n) {
  elements_.push_back(Matrix::Identity(n, n));
  for (int k = 1; k < n; ++k) {
    for (int j = 0; j < k; ++j) {
      Matrix s = Matrix::Zero(n, n), a = Matrix::Zero(n, n);
      s(j, k) = s(k, j) = 1.0;
      a(j, k) = -kI;
      a(k, j) = kI;
      elements_.push_back(s);
      elements_.push_back(a);
    }
    Matrix d = Matrix::Zero(n, n);
    const double c = std::sqrt(2.0 / (k * (k + 1.0)));
    for (int j = 0; j < k; ++j) d(j, j) = c;
    d(k, k) = -c * k;
    elements_.push_back(d);
  }
  for (const Matrix& e : elements_) norms_.push_back((e * e).trace().real());
}

const ObservableBasis& ObservableBasis::standard(int n) {
  constexpr int kMax = 64;
  if (n < 1 || n > kMax) throw DomainError("Hilbert space dimension out of range");
  static std::array<std::unique_ptr<ObservableBasis>, kMax + 1> cache;
  static std::mutex mu;
  std::lock_guard<std::mutex> lock(mu);
  if (!cache[n]) cache[n].reset(new ObservableBasis(n));
  return *cache[n];
}

Eigen::VectorXd ObservableBasis::coordinates(const Matrix& m) const {
  if (m.rows() != n_ || m.cols() != n_) throw DimensionMismatch("matrix size differs from basis");
  Eigen::VectorXd x(size());
  for (int mu = 0; mu < size(); ++mu) x[mu] = (m * elements_[mu]).trace().real();
  return x;
}

Matrix ObservableBasis::reconstruct(const Eigen::VectorXd& x) const {
  if (x.size() != size()) throw DimensionMismatch("coordinate vector length differs from basis");
  Matrix m = Matrix::Zero(n_, n_);
  for (int mu = 0; mu < size(); ++mu) m += (x[mu] / norms_[mu]) * elements_[mu];
  return m;
}

// --- DualElement / DensityState ------------------------------------------------

DualElement::DualElement(const Matrix& rep, double tol) : m_(HermitianOperator(rep, tol).matrix()) {}

DualElement DualElement::from_coords(int n, const Eigen::VectorXd& x) {
  if (!x.allFinite()) throw InvalidSpec("non-finite coordinates");
  return DualElement(hermitian_part(ObservableBasis::standard(n).reconstruct(x)));
}

Eigen::VectorXd DualElement::coords() const { return ObservableBasis::standard(dim()).coordinates(m_); }

Eigen::VectorXd DualElement::tangent_coords() const {
  const Eigen::VectorXd x = coords();
  return x.tail(x.size() - 1);
}

DensityState::DensityState(const Matrix& rho, double trace_tol, double positivity_tol)
    : rho_(HermitianOperator(rho, 1e-10).matrix()) {
  const double tr = rho_.trace().real();
  if (std::abs(tr - 1.0) > trace_tol) throw DomainError("density matrix must have unit trace");
  spectrum_ = hermitian_eigenvalues(rho_);
  if (spectrum_[0] < -positivity_tol) throw DomainError("density matrix has a negative eigenvalue");
  const double cut = kRankEps * spectral_norm(spectrum_);
  for (int i = 0; i < spectrum_.size(); ++i) {
    if (spectrum_[i] > cut) ++k_plus_;
    if (spectrum_[i] < -cut) ++k_minus_;
  }
  rank_ = k_plus_ + k_minus_;
}

DensityState DensityState::from_coords(int n, const Eigen::VectorXd& x) {
  const int full = n * n;
  Eigen::VectorXd c(full);
  if (x.size() == full - 1) {
    c[0] = 1.0;
    c.tail(full - 1) = x;
  } else if (x.size() == full) {
    c = x;
  } else {
    throw DimensionMismatch("state coordinates must have n^2 - 1 or n^2 entries");
  }
  if (!c.allFinite()) throw InvalidSpec("non-finite coordinates");
  return DensityState(ObservableBasis::standard(n).reconstruct(c));
}

DensityState DensityState::bloch(double x1, double x2, double x3) {
  return from_coords(2, Eigen::Vector3d(x1, x2, x3));
}

double DensityState::purity() const { return (rho_ * rho_).trace().real(); }

// --- LindbladSpec --------------------------------------------------------------

LindbladSpec::LindbladSpec(HermitianOperator h, std::vector<Matrix> collapse)
    : h_(std::move(h)), v_(std::move(collapse)), vsum_(HermitianOperator::zero(h_.dim())) {
  const int n = h_.dim();
  if (v_.size() > static_cast<std::size_t>(n * n - 1))
    throw InvalidSpec("at most n^2 - 1 collapse operators are allowed");
  Matrix s = Matrix::Zero(n, n);
  for (const Matrix& v : v_) {
    if (v.rows() != n || v.cols() != n) throw DimensionMismatch("collapse operator size differs from H");
    if (!v.allFinite()) throw InvalidSpec("collapse operator has non-finite entries");
    s += v.adjoint() * v;
  }
  vsum_ = hermitian_part(s);
}

LindbladSpec LindbladSpec::phase_damping(double gamma) {
  if (!(gamma >= 0.0 && gamma <= 1.0)) throw InvalidSpec("phase damping needs 0 <= gamma <= 1");
  std::vector<Matrix> v{std::sqrt(1.0 - gamma) * Matrix::Identity(2, 2),
                        std::sqrt(gamma) * HermitianOperator::pauli(3).matrix()};
  return LindbladSpec(HermitianOperator::zero(2), std::move(v));
}

Matrix LindbladSpec::kraus(const Matrix& x) const {
  Matrix out = Matrix::Zero(x.rows(), x.cols());
  for (const Matrix& v : v_) out += v * x * v.adjoint();
  return out;
}

void AlgebraConfig::validate() const {
  if (!(lambda != 0.0) || !std::isfinite(lambda)) throw InvalidSpec("lambda must be finite and nonzero");
  if (!std::isfinite(kappa)) throw InvalidSpec("kappa must be finite");
}

// --- Lie-Jordan products -------------------------------------------------------

HermitianOperator lie_product(const HermitianOperator& a, const HermitianOperator& b) {
  require_same(a.dim(), b.dim());
  return hermitian_part(-0.5 * kI * commutator(a.matrix(), b.matrix()));
}

HermitianOperator jordan_product(const HermitianOperator& a, const HermitianOperator& b) {
  require_same(a.dim(), b.dim());
  return hermitian_part(0.5 * anticommutator(a.matrix(), b.matrix()));
}

double linear_function(const HermitianOperator& a, const DualElement& xi) {
  require_same(a.dim(), xi.dim());
  return (xi.matrix() * a.matrix()).trace().real();
}

double expectation(const HermitianOperator& a, const DualElement& xi) {
  require_same(a.dim(), xi.dim());
  const double f1 = xi.matrix().trace().real();
  const double scale = xi.matrix().cwiseAbs().maxCoeff();
  if (std::abs(f1) <= 1e-14 * scale || f1 == 0.0)
    throw DomainError("expectation value undefined where f_I vanishes");
  return linear_function(a, xi) / f1;
}

double lambda_tensor(const HermitianOperator& a, const HermitianOperator& b, const DualElement& xi) {
  return linear_function(lie_product(a, b), xi);
}

double r_tensor(const HermitianOperator& a, const HermitianOperator& b, const DualElement& xi) {
  return linear_function(jordan_product(a, b), xi);
}

double lambdaD_tensor(const HermitianOperator& a, const HermitianOperator& b, const DensityState& rho) {
  return expectation(lie_product(a, b), rho.dual());
}

double rD_tensor(const HermitianOperator& a, const HermitianOperator& b, const DensityState& rho) {
  const DualElement xi = rho.dual();
  return expectation(jordan_product(a, b), xi) - expectation(a, xi) * expectation(b, xi);
}

// --- vector fields -------------------------------------------------------------

DualElement hamiltonian_field(const HermitianOperator& h, const DualElement& xi, const AlgebraConfig& cfg) {
  cfg.validate();
  require_same(h.dim(), xi.dim());
  return DualElement(hermitian_part(cfg.kappa * 0.5 * kI * commutator(h.matrix(), xi.matrix())));
}

DualElement hamiltonian_field(const HermitianOperator& h, const DensityState& rho, const AlgebraConfig& cfg) {
  return hamiltonian_field(h, rho.dual(), cfg);
}

DualElement gradient_field(const HermitianOperator& g, const DualElement& xi, const AlgebraConfig& cfg) {
  cfg.validate();
  require_same(g.dim(), xi.dim());
  const double eg = expectation(g, xi);
  const Matrix m = 0.5 * anticommutator(g.matrix(), xi.matrix()) - eg * xi.matrix();
  return DualElement(hermitian_part(m / cfg.lambda));
}

DualElement gradient_field(const HermitianOperator& g, const DensityState& rho, const AlgebraConfig& cfg) {
  return gradient_field(g, rho.dual(), cfg);
}

DualElement linear_gradient_field(const HermitianOperator& g, const DualElement& xi, const AlgebraConfig& cfg) {
  cfg.validate();
  require_same(g.dim(), xi.dim());
  return DualElement(hermitian_part(0.5 * anticommutator(g.matrix(), xi.matrix()) / cfg.lambda));
}

DualElement kraus_field(const LindbladSpec& spec, const DualElement& xi) {
  require_same(spec.dim(), xi.dim());
  const double ev = expectation(spec.v_sum(), xi);
  return DualElement(hermitian_part(spec.kraus(xi.matrix()) - ev * xi.matrix()));
}

DualElement kraus_field(const LindbladSpec& spec, const DensityState& rho) { return kraus_field(spec, rho.dual()); }

Matrix lindblad_generator(const LindbladSpec& spec, const Matrix& x) {
  if (x.rows() != spec.dim() || x.cols() != spec.dim()) throw DimensionMismatch("state size differs from spec");
  return -kI * commutator(spec.hamiltonian().matrix(), x) - 0.5 * anticommutator(spec.v_sum().matrix(), x) +
         spec.kraus(x);
}

HermitianOperator lindblad_generator(const LindbladSpec& spec, const DensityState& rho) {
  return hermitian_part(lindblad_generator(spec, rho.matrix()));
}

DualElement kl_vector_field(const LindbladSpec& spec, const DualElement& xi, const AlgebraConfig& cfg) {
  cfg.validate();
  const AlgebraConfig dynamical{cfg.lambda, kDynamicalKappa};
  const HermitianOperator g = (-cfg.lambda) * spec.v_sum();
  const Matrix sum = hamiltonian_field(spec.hamiltonian(), xi, dynamical).matrix() +
                     gradient_field(g, xi, cfg).matrix() + kraus_field(spec, xi).matrix();
  return DualElement(hermitian_part(sum));
}

DualElement kl_vector_field(const LindbladSpec& spec, const DensityState& rho, const AlgebraConfig& cfg) {
  return kl_vector_field(spec, rho.dual(), cfg);
}

Eigen::MatrixXd liouvillian_matrix(const LindbladSpec& spec) {
  const ObservableBasis& basis = ObservableBasis::standard(spec.dim());
  const int size = basis.size();
  Eigen::MatrixXd m(size, size);
  for (int nu = 0; nu < size; ++nu) {
    const Matrix image = lindblad_generator(spec, basis.element(nu) / basis.normalization(nu));
    m.col(nu) = basis.coordinates(hermitian_part(image).matrix());
  }
  return m;
}

// --- dynamics ------------------------------------------------------------------

namespace {

Eigen::VectorXd rk4_step(const Eigen::MatrixXd& m, const Eigen::VectorXd& x, double h) {
  const Eigen::VectorXd k1 = m * x;
  const Eigen::VectorXd k2 = m * (x + 0.5 * h * k1);
  const Eigen::VectorXd k3 = m * (x + 0.5 * h * k2);
  const Eigen::VectorXd k4 = m * (x + h * k3);
  return x + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

Sample make_sample(int n, double tau, const Eigen::VectorXd& x, double drift, double rank_eps) {
  const ObservableBasis& basis = ObservableBasis::standard(n);
  const Matrix rho = basis.reconstruct(x);
  const Eigen::VectorXd ev = hermitian_eigenvalues(rho);
  double purity = 0.0;
  for (int mu = 0; mu < x.size(); ++mu) purity += x[mu] * x[mu] / basis.normalization(mu);
  const double cut = rank_eps * spectral_norm(ev);
  int rank = 0;
  for (int i = 0; i < ev.size(); ++i) rank += std::abs(ev[i]) > cut;
  return {tau, x, purity, ev[0], rank, drift};
}

}  // namespace

std::vector<Sample> integrate(const LindbladSpec& spec, const DensityState& rho0, const IntegrateOptions& opt) {
  if (!(opt.dt > 0.0) || !(opt.t_max > 0.0) || !std::isfinite(opt.t_max))
    throw InvalidSpec("integrate needs t_max > 0 and dt > 0");
  if (opt.sample_every < 1) throw InvalidSpec("sample_every must be at least 1");
  require_same(spec.dim(), rho0.dim());
  const int n = spec.dim();
  const Eigen::MatrixXd m = liouvillian_matrix(spec);
  const long steps = std::max(1L, static_cast<long>(std::ceil(opt.t_max / opt.dt - 1e-9)));

  std::vector<Sample> out;
  Eigen::VectorXd x = rho0.coords();
  out.push_back(make_sample(n, 0.0, x, 0.0, opt.rank_eps));
  for (long s = 1; s <= steps; ++s) {
    const double tau = s == steps ? opt.t_max : s * opt.dt;
    const double h = tau - (s - 1) * opt.dt;
    x = rk4_step(m, x, h);
    const double drift = std::abs(x[0] - 1.0);
    if (drift > opt.trace_tol || !x.allFinite()) {
      const Sample bad = make_sample(n, tau, x / x[0], drift, opt.rank_eps);
      throw PositivityViolation(tau, bad.min_eigenvalue, drift);
    }
    x /= x[0];
    Sample sample = make_sample(n, tau, x, drift, opt.rank_eps);
    if (sample.min_eigenvalue < -opt.positivity_tol) throw PositivityViolation(tau, sample.min_eigenvalue, drift);
    if (s % opt.sample_every == 0 || s == steps) out.push_back(std::move(sample));
  }
  return out;
}

std::vector<Sample> propagate(const LindbladSpec& spec, const Eigen::VectorXd& coords0, double dt, int nsteps,
                              double rank_eps) {
  const int n = spec.dim();
  if (coords0.size() != n * n) throw DimensionMismatch("coordinates must have n^2 entries");
  if (nsteps < 0) throw InvalidSpec("nsteps must be nonnegative");
  const Eigen::MatrixXd m = liouvillian_matrix(spec);
  std::vector<Sample> out;
  Eigen::VectorXd x = coords0;
  out.push_back(make_sample(n, 0.0, x, std::abs(x[0] - 1.0), rank_eps));
  for (int s = 1; s <= nsteps; ++s) {
    x = rk4_step(m, x, dt);
    out.push_back(make_sample(n, s * dt, x, std::abs(x[0] - 1.0), rank_eps));
  }
  return out;
}

// --- strata --------------------------------------------------------------------

StratumInfo rank_and_stratum(const DualElement& xi, double eps) {
  const Eigen::VectorXd ev = hermitian_eigenvalues(xi.matrix());
  const int n = xi.dim();
  const double cut = eps * spectral_norm(ev);
  StratumInfo info;
  for (int i = 0; i < ev.size(); ++i) {
    if (ev[i] > cut) ++info.k_plus;
    if (ev[i] < -cut) ++info.k_minus;
  }
  info.k = info.k_plus + info.k_minus;
  info.is_state = info.k_minus == 0 && std::abs(xi.matrix().trace().real() - 1.0) <= 1e-10;
  info.stratum_dim = 2 * n * info.k - info.k * info.k - (info.is_state ? 1 : 0);
  return info;
}

Matrix kernel_basis(const DualElement& xi, double eps) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(xi.matrix());
  if (es.info() != Eigen::Success) throw DomainError("Hermitian eigensolve failed");
  const double cut = eps * spectral_norm(es.eigenvalues());
  std::vector<int> cols;
  for (int i = 0; i < es.eigenvalues().size(); ++i)
    if (std::abs(es.eigenvalues()[i]) <= cut) cols.push_back(i);
  Matrix k(xi.dim(), static_cast<Eigen::Index>(cols.size()));
  for (std::size_t c = 0; c < cols.size(); ++c) k.col(static_cast<Eigen::Index>(c)) = es.eigenvectors().col(cols[c]);
  return k;
}

bool tangency_check(const DualElement& xi, const DualElement& tangent, double tol) {
  require_same(xi.dim(), tangent.dim());
  const Matrix k = kernel_basis(xi);
  if (k.cols() == 0) return true;
  const Matrix block = k.adjoint() * tangent.matrix() * k;
  return block.cwiseAbs().maxCoeff() <= tol;
}

int tangent_space_dimension(const DualElement& xi, double eps) {
  const int n = xi.dim();
  const ObservableBasis& basis = ObservableBasis::standard(n);
  const Matrix k = kernel_basis(xi, eps);
  const int m = static_cast<int>(k.cols());
  const int free = basis.size() - 1;
  if (m == 0) return free;
  Eigen::MatrixXd constraint(2 * m * m, free);
  for (int mu = 1; mu < basis.size(); ++mu) {
    const Matrix block = k.adjoint() * basis.element(mu) * k;
    for (int r = 0; r < m; ++r)
      for (int c = 0; c < m; ++c) {
        constraint(r * m + c, mu - 1) = block(r, c).real();
        constraint(m * m + r * m + c, mu - 1) = block(r, c).imag();
      }
  }
  return free - matrix_rank(constraint, 1e-9);
}

int orbit_span_dimension(const DensityState& rho, double tol) {
  const int n = rho.dim();
  const ObservableBasis& basis = ObservableBasis::standard(n);
  const int free = basis.size() - 1;
  Eigen::MatrixXd span(free, 2 * free);
  const DualElement xi = rho.dual();
  for (int mu = 1; mu < basis.size(); ++mu) {
    const HermitianOperator a(basis.element(mu));
    span.col(mu - 1) = hamiltonian_field(a, xi).tangent_coords();
    span.col(free + mu - 1) = gradient_field(a, xi).tangent_coords();
  }
  return matrix_rank(span, tol);
}

// --- probability vectors ---------------------------------------------------------

Eigen::VectorXd born_probabilities(const Eigen::VectorXcd& psi, const Matrix& basis) {
  const int n = static_cast<int>(psi.size());
  if (basis.rows() != n || basis.cols() != n) throw DimensionMismatch("basis must be n x n");
  if ((basis.adjoint() * basis - Matrix::Identity(n, n)).cwiseAbs().maxCoeff() > 1e-10)
    throw InvalidSpec("basis is not orthonormal");
  const double norm2 = psi.squaredNorm();
  if (!(norm2 > 0.0) || !std::isfinite(norm2)) throw DomainError("state vector must be nonzero and finite");
  return (basis.adjoint() * psi).cwiseAbs2() / norm2;
}

Eigen::VectorXd born_probabilities(const Eigen::VectorXcd& psi) {
  const int n = static_cast<int>(psi.size());
  return born_probabilities(psi, Matrix::Identity(n, n));
}

DensityState polar_state(const Eigen::VectorXd& p, const Matrix& u) {
  const int n = static_cast<int>(p.size());
  if (u.rows() != n || u.cols() != n) throw DimensionMismatch("unitary size differs from probability vector");
  if (!p.allFinite() || (p.array() < 0.0).any() || std::abs(p.sum() - 1.0) > 1e-12)
    throw InvalidSpec("invalid probability vector");
  if ((u.adjoint() * u - Matrix::Identity(n, n)).cwiseAbs().maxCoeff() > 1e-10)
    throw InvalidSpec("matrix is not unitary");
  const Matrix rho = u.adjoint() * p.cast<Complex>().asDiagonal() * u;
  return DensityState(0.5 * (rho + rho.adjoint()));
}

}  // namespace stratafold::qgeom
