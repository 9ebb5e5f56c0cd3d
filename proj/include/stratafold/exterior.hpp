#pragma once

// Exterior algebra over a finite-dimensional real Lie algebra: multivectors,
// forms, the Koszul boundary, the Chevalley-Eilenberg differential and the
// operators built from them.
//
// Basis elements e_{i1} ^ ... ^ e_{ip} with i1 < ... < ip are encoded as a
// bitmask (bit i set <=> index i present). Indices are 0-based in code.

#include <Eigen/Dense>

#include <bit>
#include <cmath>
#include <cstdint>
#include <initializer_list>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "stratafold/errors.hpp"

namespace stratafold::exterior {

using Blade = std::uint32_t;
inline constexpr int kMaxDim = 24;

inline int grade_of(Blade b) { return std::popcount(b); }

// Sign of e_A ^ e_B when A and B are disjoint: (-1)^{#{(a,b) : a in A, b in B, a > b}}.
inline int wedge_sign(Blade a, Blade b) {
  int swaps = 0;
  while (b != 0) {
    const int low = std::countr_zero(b);
    swaps += std::popcount(a >> (low + 1));
    b &= b - 1;
  }
  return (swaps & 1) ? -1 : 1;
}

std::vector<int> indices_of(Blade b);

// Sorts an index sequence into a blade. Returns sign 0 on a repeated index.
std::pair<Blade, int> canonicalize(std::span<const int> sequence);

// Sparse graded antisymmetric tensor. The tag separates multivectors
// (Lambda V) from forms (Lambda V*) at the type level; the storage is shared.
template <class Tag>
class Graded {
 public:
  Graded() = default;
  explicit Graded(int dim) : dim_(dim) {
    if (dim < 0 || dim > kMaxDim) throw InvalidSpec("dimension out of range");
  }

  static Graded scalar(int dim, double value) {
    Graded g(dim);
    g.add(Blade{0}, value);
    return g;
  }
  static Graded basis(int dim, std::initializer_list<int> indices,
                      double coeff = 1.0) {
    return basis(dim, std::span<const int>(indices.begin(), indices.size()),
                 coeff);
  }
  static Graded basis(int dim, std::span<const int> indices,
                      double coeff = 1.0) {
    Graded g(dim);
    g.add(indices, coeff);
    return g;
  }
  static Graded from_blade(int dim, Blade b, double coeff = 1.0) {
    Graded g(dim);
    g.add(b, coeff);
    return g;
  }
  // Grade-1 element with the given coordinates.
  static Graded vector(const Eigen::VectorXd& coords) {
    Graded g(static_cast<int>(coords.size()));
    for (int i = 0; i < coords.size(); ++i) g.add(Blade{1} << i, coords[i]);
    return g;
  }

  int dim() const { return dim_; }

  void add(Blade b, double coeff) {
    if (coeff == 0.0) return;
    if (b >> dim_) throw DimensionMismatch("blade index exceeds dimension");
    auto [it, inserted] = terms_.try_emplace(b, coeff);
    if (!inserted) {
      it->second += coeff;
      if (it->second == 0.0) terms_.erase(it);
    }
  }

  // Unsorted index lists are normalized with the permutation sign.
  void add(std::span<const int> indices, double coeff) {
    for (int i : indices)
      if (i < 0 || i >= dim_) throw DimensionMismatch("index out of range");
    const auto [blade, sign] = canonicalize(indices);
    if (sign != 0) add(blade, sign * coeff);
  }

  double operator[](Blade b) const {
    const auto it = terms_.find(b);
    return it == terms_.end() ? 0.0 : it->second;
  }
  double coefficient(std::span<const int> indices) const {
    const auto [blade, sign] = canonicalize(indices);
    return sign == 0 ? 0.0 : sign * (*this)[blade];
  }
  double coefficient(std::initializer_list<int> indices) const {
    return coefficient(std::span<const int>(indices.begin(), indices.size()));
  }

  const std::map<Blade, double>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  // True when every stored term has grade k (the zero element qualifies).
  bool is_homogeneous_of(int k) const {
    for (const auto& [b, c] : terms_)
      if (grade_of(b) != k) return false;
    return true;
  }

  Graded part(int k) const {
    Graded out(dim_);
    for (const auto& [b, c] : terms_)
      if (grade_of(b) == k) out.terms_.emplace(b, c);
    return out;
  }

  double norm_inf() const {
    double m = 0.0;
    for (const auto& [b, c] : terms_) m = std::max(m, std::abs(c));
    return m;
  }

  Eigen::VectorXd coordinates() const {  // grade-1 part
    Eigen::VectorXd v = Eigen::VectorXd::Zero(dim_);
    for (int i = 0; i < dim_; ++i) v[i] = (*this)[Blade{1} << i];
    return v;
  }

  Graded& operator+=(const Graded& o) {
    check_same(o);
    for (const auto& [b, c] : o.terms_) add(b, c);
    return *this;
  }
  Graded& operator-=(const Graded& o) {
    check_same(o);
    for (const auto& [b, c] : o.terms_) add(b, -c);
    return *this;
  }
  Graded& operator*=(double s) {
    if (s == 0.0) {
      terms_.clear();
      return *this;
    }
    for (auto& [b, c] : terms_) c *= s;
    return *this;
  }
  friend Graded operator+(Graded a, const Graded& b) { return a += b; }
  friend Graded operator-(Graded a, const Graded& b) { return a -= b; }
  friend Graded operator-(Graded a) { return a *= -1.0; }
  friend Graded operator*(double s, Graded a) { return a *= s; }
  friend Graded operator*(Graded a, double s) { return a *= s; }

  void check_same(const Graded& o) const {
    if (o.dim_ != dim_) throw DimensionMismatch("operands have different parents");
  }

 private:
  int dim_ = 0;
  std::map<Blade, double> terms_;
};

struct VectorTag {};
struct CovectorTag {};
using Multivector = Graded<VectorTag>;
using Form = Graded<CovectorTag>;

template <class Tag>
double max_abs_diff(const Graded<Tag>& a, const Graded<Tag>& b) {
  return (a - b).norm_inf();
}

template <class Tag>
Graded<Tag> wedge(const Graded<Tag>& a, const Graded<Tag>& b) {
  a.check_same(b);
  Graded<Tag> out(a.dim());
  for (const auto& [ba, ca] : a.terms())
    for (const auto& [bb, cb] : b.terms())
      if ((ba & bb) == 0) out.add(ba | bb, wedge_sign(ba, bb) * ca * cb);
  return out;
}

struct StructureConstant {
  int i, j, k;
  double value;
};

// Real Lie algebra given by structure constants [e_i, e_j] = sum_k c_ijk e_k.
// Antisymmetry and the Jacobi identity are validated at construction.
class LieAlgebra {
 public:
  // constants laid out as c[(i * n + j) * n + k]; size must be n^3.
  LieAlgebra(int dim, std::vector<double> constants, double tol = 1e-10);

  // Nonzero entries (0-based). An entry (i,j,k,v) whose partner (j,i,k) is not
  // listed gets -v filled in; listed partners must agree.
  static LieAlgebra from_entries(int dim, std::span<const StructureConstant> entries,
                                 double tol = 1e-10);

  static LieAlgebra abelian(int dim);
  static LieAlgebra so3();         // [e_i, e_j] = eps_ijk e_k
  static LieAlgebra heisenberg();  // [e_1, e_2] = e_3
  static LieAlgebra gl2();         // E11, E12, E21, E22 under the commutator

  // Same algebra in the basis f_i = sum_a P(a,i) e_a.
  LieAlgebra change_basis(const Eigen::MatrixXd& P) const;

  int dim() const { return dim_; }
  double c(int i, int j, int k) const { return c_[(i * dim_ + j) * dim_ + k]; }
  const std::vector<double>& constants() const { return c_; }

  Eigen::VectorXd bracket(const Eigen::VectorXd& u, const Eigen::VectorXd& v) const;
  Multivector bracket(const Multivector& u, const Multivector& v) const;

  double antisymmetry_residual() const;
  double jacobi_residual() const;

 private:
  int dim_;
  std::vector<double> c_;
};

class Endomorphism {
 public:
  explicit Endomorphism(Eigen::MatrixXd m);
  static Endomorphism identity(int n) {
    return Endomorphism(Eigen::MatrixXd::Identity(n, n));
  }
  int dim() const { return static_cast<int>(m_.rows()); }
  const Eigen::MatrixXd& matrix() const { return m_; }

 private:
  Eigen::MatrixXd m_;
};

class DualPoint {
 public:
  explicit DualPoint(Eigen::VectorXd coords);
  int dim() const { return static_cast<int>(alpha_.size()); }
  const Eigen::VectorXd& coords() const { return alpha_; }

 private:
  Eigen::VectorXd alpha_;
};

// --- multivector side -------------------------------------------------------

// d(v1^...^vp) = sum_{i<j} (-1)^{i+j+1} [vi,vj] ^ v1 ^ ..(omit i,j).. ^ vp,
// positions 1-based. Zero on grades 0 and 1.
Multivector koszul_boundary(const LieAlgebra& alg, const Multivector& a);

// epsilon_v(a) = v ^ a for grade-1 v.
Multivector insert(const Multivector& v, const Multivector& a);

// L_u = epsilon_u d + d epsilon_u; the adjoint action extended as a derivation.
Multivector lie_derivative(const LieAlgebra& alg, const Multivector& u,
                           const Multivector& a);

// Schouten-Nijenhuis bracket from
// (-1)^{q+1}[G,H] = d(G^H) - dG ^ H - (-1)^q G ^ dH, applied per grade pair.
Multivector schouten_bracket(const LieAlgebra& alg, const Multivector& g,
                             const Multivector& h);

// delta_T(v1^...^vp) = sum_j v1 ^ .. ^ T(vj) ^ .. ^ vp.
Multivector endo_extension(const Endomorphism& T, const Multivector& a);

// d_T = delta_T d - d delta_T.
Multivector twisted_boundary(const LieAlgebra& alg, const Endomorphism& T,
                             const Multivector& a);

// N_T(e_i, e_j, e_k) = d_T(d_T(e_i ^ e_j ^ e_k)), an element of V.
Multivector nijenhuis_tensor(const LieAlgebra& alg, const Endomorphism& T, int i,
                             int j, int k);

// --- form side --------------------------------------------------------------

// Chevalley-Eilenberg differential with the (-1)^{i+j} sign rule:
// (d b)(v1..v_{p+1}) = sum_{i<j} (-1)^{i+j} b([vi,vj], v1..(omit i,j)..).
Form chevalley_d(const LieAlgebra& alg, const Form& b);

// Interior product in the first slot; zero on 0-forms.
Form contract(const Multivector& v, const Form& b);

// Cartan formula i_v d + d i_v.
Form lie_derivative(const LieAlgebra& alg, const Multivector& v, const Form& b);

// <v1^..^vp | a1^..^ap> = det ||a_j(v_k)||. Both arguments must be
// homogeneous of one grade (zero elements pair with anything to 0).
double pairing(const Multivector& a, const Form& b);

// Lie-Poisson bivector on V*: Lambda(dv_i, dv_j)(alpha) = alpha([e_i, e_j]).
double lie_poisson_bivector(const LieAlgebra& alg, int i, int j,
                            const DualPoint& alpha);

}  // namespace stratafold::exterior
