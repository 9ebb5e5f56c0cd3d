#pragma once

// Lie-Jordan geometry of finite-level quantum states.
//
// Observables are Hermitian n x n matrices with
//   [[a, b]] = -(i/2)(ab - ba),   a (.) b = (ab + ba)/2.
// A dual element xi is represented by the Hermitian matrix xi~ with
// xi(a) = Tr(xi~ a); its coordinates are x_mu = Tr(xi~ a_mu) in the
// observable basis. Tangent vectors are carried the same way (traceless
// representatives for fields tangent to the trace-one slice).
//
// Field normalizations (lambda from AlgebraConfig):
//   hamiltonian_field  X_h : xi' = kappa (i/2)[h, xi~],  X_h(e_a) = kappa e_[[h,a]]
//   gradient_field     Y_g : xi' = (g (.) xi~ - e_g xi~) / lambda
//   kraus_field        Z_K : xi' = K(xi~) - e_V xi~,   K(x) = sum_j V_j x V_j^+
// The dynamical field of a Lindblad generator takes kappa = -2 (so that the
// Hamiltonian part is -i[H, rho]) and G = -lambda V, which gives
// X_H + Y_G + Z_K = L(rho) exactly on the trace-one slice.

#include <Eigen/Dense>

#include <complex>
#include <memory>
#include <span>
#include <vector>

#include "stratafold/errors.hpp"

namespace stratafold::qgeom {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;

inline constexpr double kRankEps = 1e-10;
// kappa for the Hamiltonian part of a Lindblad flow.
inline constexpr double kDynamicalKappa = -2.0;

class HermitianOperator {
 public:
  // Rejects ||a - a^+|| > tol * max(1, ||a||); stores the exact Hermitian part.
  explicit HermitianOperator(const Matrix& a, double tol = 1e-12);
  static HermitianOperator identity(int n);
  static HermitianOperator zero(int n);
  // sigma_0 .. sigma_3
  static HermitianOperator pauli(int k);

  int dim() const { return static_cast<int>(a_.rows()); }
  const Matrix& matrix() const { return a_; }

  friend HermitianOperator operator+(const HermitianOperator& a, const HermitianOperator& b);
  friend HermitianOperator operator-(const HermitianOperator& a, const HermitianOperator& b);
  friend HermitianOperator operator*(double s, const HermitianOperator& a);

 private:
  Matrix a_;
};

// (m + m^+)/2 with no validation.
HermitianOperator hermitian_part(const Matrix& m);

// a_0 = identity, then for each k = 1..n-1: the symmetric and antisymmetric
// off-diagonal pairs (j,k), j < k, followed by the k-th diagonal element.
// For n = 2 this is sigma_0..sigma_3; for n = 3 it is the Gell-Mann order.
class ObservableBasis {
 public:
  static const ObservableBasis& standard(int n);

  int dim() const { return n_; }
  int size() const { return static_cast<int>(elements_.size()); }
  const Matrix& element(int mu) const { return elements_[mu]; }
  // Tr(a_mu a_mu)
  double normalization(int mu) const { return norms_[mu]; }

  Eigen::VectorXd coordinates(const Matrix& m) const;
  Matrix reconstruct(const Eigen::VectorXd& x) const;

 private:
  explicit ObservableBasis(int n);
  int n_;
  std::vector<Matrix> elements_;
  std::vector<double> norms_;
};

class DualElement {
 public:
  explicit DualElement(const Matrix& rep, double tol = 1e-12);
  explicit DualElement(const HermitianOperator& rep) : m_(rep.matrix()) {}
  // Full coordinate vector (length n^2, x_0 first).
  static DualElement from_coords(int n, const Eigen::VectorXd& x);

  int dim() const { return static_cast<int>(m_.rows()); }
  const Matrix& matrix() const { return m_; }
  Eigen::VectorXd coords() const;
  // x_1 .. x_{n^2-1}
  Eigen::VectorXd tangent_coords() const;

 private:
  Matrix m_;
};

class DensityState {
 public:
  // Requires trace 1 within trace_tol and min eigenvalue >= -positivity_tol.
  explicit DensityState(const Matrix& rho, double trace_tol = 1e-10, double positivity_tol = 1e-8);
  // Length n^2 - 1 (x_0 = 1 implied) or n^2.
  static DensityState from_coords(int n, const Eigen::VectorXd& x);
  static DensityState bloch(double x1, double x2, double x3);

  int dim() const { return static_cast<int>(rho_.rows()); }
  const Matrix& matrix() const { return rho_; }
  DualElement dual() const { return DualElement(hermitian_part(rho_)); }
  Eigen::VectorXd coords() const { return dual().coords(); }
  const Eigen::VectorXd& spectrum() const { return spectrum_; }  // ascending
  int rank() const { return rank_; }
  int k_plus() const { return k_plus_; }
  int k_minus() const { return k_minus_; }
  double purity() const;

 private:
  Matrix rho_;
  Eigen::VectorXd spectrum_;
  int rank_ = 0, k_plus_ = 0, k_minus_ = 0;
};

class LindbladSpec {
 public:
  LindbladSpec(HermitianOperator h, std::vector<Matrix> collapse);
  // H = 0, V_1 = sqrt(1-gamma) I, V_2 = sqrt(gamma) sigma_3.
  static LindbladSpec phase_damping(double gamma);

  int dim() const { return h_.dim(); }
  const HermitianOperator& hamiltonian() const { return h_; }
  const std::vector<Matrix>& collapse() const { return v_; }
  // V = sum_j V_j^+ V_j
  const HermitianOperator& v_sum() const { return vsum_; }
  // K(x) = sum_j V_j x V_j^+
  Matrix kraus(const Matrix& x) const;

 private:
  HermitianOperator h_;
  std::vector<Matrix> v_;
  HermitianOperator vsum_;
};

struct AlgebraConfig {
  double lambda = 1.0;
  double kappa = 1.0;
  void validate() const;
};

// --- Lie-Jordan algebra ------------------------------------------------------

HermitianOperator lie_product(const HermitianOperator& a, const HermitianOperator& b);
HermitianOperator jordan_product(const HermitianOperator& a, const HermitianOperator& b);

// f_a(xi) = Tr(xi~ a)
double linear_function(const HermitianOperator& a, const DualElement& xi);
// e_a = f_a / f_I; DomainError when f_I vanishes.
double expectation(const HermitianOperator& a, const DualElement& xi);

double lambda_tensor(const HermitianOperator& a, const HermitianOperator& b, const DualElement& xi);
double r_tensor(const HermitianOperator& a, const HermitianOperator& b, const DualElement& xi);
double lambdaD_tensor(const HermitianOperator& a, const HermitianOperator& b, const DensityState& rho);
double rD_tensor(const HermitianOperator& a, const HermitianOperator& b, const DensityState& rho);

// --- vector fields -------------------------------------------------------------

DualElement hamiltonian_field(const HermitianOperator& h, const DualElement& xi, const AlgebraConfig& cfg = {});
DualElement hamiltonian_field(const HermitianOperator& h, const DensityState& rho, const AlgebraConfig& cfg = {});
DualElement gradient_field(const HermitianOperator& g, const DualElement& xi, const AlgebraConfig& cfg = {});
DualElement gradient_field(const HermitianOperator& g, const DensityState& rho, const AlgebraConfig& cfg = {});
// Linear gradient field on the whole dual: xi' = g (.) xi~ / lambda.
DualElement linear_gradient_field(const HermitianOperator& g, const DualElement& xi, const AlgebraConfig& cfg = {});

DualElement kraus_field(const LindbladSpec& spec, const DualElement& xi);
DualElement kraus_field(const LindbladSpec& spec, const DensityState& rho);

// L(x) = -i[H, x] - {V, x}/2 + K(x), linear on all matrices.
Matrix lindblad_generator(const LindbladSpec& spec, const Matrix& x);
HermitianOperator lindblad_generator(const LindbladSpec& spec, const DensityState& rho);

// X_H (kappa = -2) + Y_{-lambda V} + Z_K.
DualElement kl_vector_field(const LindbladSpec& spec, const DualElement& xi, const AlgebraConfig& cfg = {});
DualElement kl_vector_field(const LindbladSpec& spec, const DensityState& rho, const AlgebraConfig& cfg = {});

// Real n^2 x n^2 matrix of L on full coordinates: x' = M x.
Eigen::MatrixXd liouvillian_matrix(const LindbladSpec& spec);

// --- dynamics ------------------------------------------------------------------

struct IntegrateOptions {
  double t_max = 1.0;
  double dt = 1e-3;
  int sample_every = 1;  // record every k-th step (the last step is always recorded)
  double trace_tol = 1e-8;
  double positivity_tol = 1e-8;
  double rank_eps = kRankEps;
};

struct Sample {
  double tau;
  Eigen::VectorXd coords;  // full, x_0 first
  double purity;
  double min_eigenvalue;
  int rank;
  double trace_drift;  // |x_0 - 1| before renormalization
};

// Fixed-step RK4 on coordinates. Each step is renormalized to unit trace and
// validated; a violation throws PositivityViolation. The first sample is tau = 0.
std::vector<Sample> integrate(const LindbladSpec& spec, const DensityState& rho0, const IntegrateOptions& opt);

// Unchecked RK4 with signed dt (negative runs backwards); nsteps steps.
std::vector<Sample> propagate(const LindbladSpec& spec, const Eigen::VectorXd& coords0, double dt, int nsteps,
                              double rank_eps = kRankEps);

// --- strata --------------------------------------------------------------------

struct StratumInfo {
  int k = 0;
  int k_plus = 0;
  int k_minus = 0;
  int stratum_dim = 0;
  bool is_state = false;
};

StratumInfo rank_and_stratum(const DualElement& xi, double eps = kRankEps);

// Orthonormal basis of Ker(xi~) (columns), threshold eps * ||xi~||.
Matrix kernel_basis(const DualElement& xi, double eps = kRankEps);

// |<B x | y>| <= tol for all x, y in an orthonormal kernel basis.
bool tangency_check(const DualElement& xi, const DualElement& tangent, double tol = 1e-10);

// Dimension of {B traceless Hermitian : <Bx|y> = 0 on Ker(xi~)} computed as
// (n^2 - 1) minus the rank of B -> K^+ B K.
int tangent_space_dimension(const DualElement& xi, double eps = kRankEps);
// Rank of {X_a(rho), Y_a(rho)} over the traceless observable basis.
int orbit_span_dimension(const DensityState& rho, double tol = 1e-9);

// --- probability vectors ---------------------------------------------------------

// p_j = |<e_j|psi>|^2 / <psi|psi> for the orthonormal columns of basis.
Eigen::VectorXd born_probabilities(const Eigen::VectorXcd& psi, const Matrix& basis);
Eigen::VectorXd born_probabilities(const Eigen::VectorXcd& psi);

// rho = U^+ diag(p) U
DensityState polar_state(const Eigen::VectorXd& p, const Matrix& u);

}  // namespace stratafold::qgeom
