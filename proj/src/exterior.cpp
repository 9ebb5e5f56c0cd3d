#include "stratafold/exterior.hpp"

#include <algorithm>

namespace stratafold::exterior {

std::vector<int> indices_of(Blade b) {
  std::vector<int> out;
  out.reserve(grade_of(b));
  while (b != 0) {
    out.push_back(std::countr_zero(b));
    b &= b - 1;
  }
  return out;
}

std::pair<Blade, int> canonicalize(std::span<const int> sequence) {
  Blade blade = 0;
  int sign = 1;
  // Insert one factor at a time on the right: e_B ^ e_i.
  for (int i : sequence) {
    const Blade bit = Blade{1} << i;
    if (blade & bit) return {0, 0};
    sign *= wedge_sign(blade, bit);
    blade |= bit;
  }
  return {blade, sign};
}

namespace {

void require_grade_one(const Multivector& v, const char* what) {
  if (!v.is_homogeneous_of(1))
    throw std::invalid_argument(std::string(what) + ": expected a grade-1 vector");
}

void require_dim(int expected, int got) {
  if (expected != got) throw DimensionMismatch("operand built over a different algebra");
}

// Enumerates all blades of grade k in dimension n.
template <class F>
void for_each_blade(int n, int k, F&& f) {
  if (k < 0 || k > n) return;
  const Blade limit = Blade{1} << n;
  for (Blade b = 0; b < limit; ++b)
    if (grade_of(b) == k) f(b);
}

}  // namespace

// --- LieAlgebra -------------------------------------------------------------

LieAlgebra::LieAlgebra(int dim, std::vector<double> constants, double tol)
    : dim_(dim), c_(std::move(constants)) {
  if (dim <= 0 || dim > kMaxDim) throw InvalidSpec("Lie algebra dimension must be in 1..24");
  if (c_.size() != static_cast<std::size_t>(dim) * dim * dim)
    throw InvalidSpec("structure constant array must have dim^3 entries");
  double cmax = 0.0;
  for (double v : c_) {
    if (!std::isfinite(v)) throw InvalidSpec("non-finite structure constant");
    cmax = std::max(cmax, std::abs(v));
  }
  const double scale = std::max(1.0, cmax);
  if (antisymmetry_residual() > tol * scale)
    throw InvalidSpec("structure constants are not antisymmetric");
  if (jacobi_residual() > tol * scale * scale)
    throw InvalidSpec("structure constants violate the Jacobi identity");
}

LieAlgebra LieAlgebra::from_entries(int dim, std::span<const StructureConstant> entries,
                                    double tol) {
  if (dim <= 0 || dim > kMaxDim) throw InvalidSpec("Lie algebra dimension must be in 1..24");
  const std::size_t n = dim;
  std::vector<double> c(n * n * n, 0.0);
  std::vector<bool> listed(n * n * n, false);
  auto at = [n](int i, int j, int k) { return (i * n + j) * n + k; };
  for (const auto& e : entries) {
    if (e.i < 0 || e.j < 0 || e.k < 0 || e.i >= dim || e.j >= dim || e.k >= dim)
      throw InvalidSpec("structure constant index out of range");
    c[at(e.i, e.j, e.k)] += e.value;
    listed[at(e.i, e.j, e.k)] = true;
  }
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j)
      for (int k = 0; k < dim; ++k)
        if (listed[at(i, j, k)] && !listed[at(j, i, k)]) c[at(j, i, k)] = -c[at(i, j, k)];
  return LieAlgebra(dim, std::move(c), tol);
}

LieAlgebra LieAlgebra::abelian(int dim) {
  return LieAlgebra(dim, std::vector<double>(static_cast<std::size_t>(dim) * dim * dim, 0.0));
}

LieAlgebra LieAlgebra::so3() {
  const StructureConstant e[] = {{0, 1, 2, 1.0}, {1, 2, 0, 1.0}, {2, 0, 1, 1.0}};
  return from_entries(3, e);
}

LieAlgebra LieAlgebra::heisenberg() {
  const StructureConstant e[] = {{0, 1, 2, 1.0}};
  return from_entries(3, e);
}

LieAlgebra LieAlgebra::gl2() {
  // Basis E_rs at index 2r+s; [E_ab, E_cd] = delta_bc E_ad - delta_da E_cb.
  std::vector<double> c(64, 0.0);
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b)
      for (int cc = 0; cc < 2; ++cc)
        for (int d = 0; d < 2; ++d) {
          const int i = 2 * a + b, j = 2 * cc + d;
          if (b == cc) c[(i * 4 + j) * 4 + (2 * a + d)] += 1.0;
          if (d == a) c[(i * 4 + j) * 4 + (2 * cc + b)] -= 1.0;
        }
  return LieAlgebra(4, std::move(c));
}

LieAlgebra LieAlgebra::change_basis(const Eigen::MatrixXd& P) const {
  if (P.rows() != dim_ || P.cols() != dim_) throw DimensionMismatch("basis change has wrong shape");
  Eigen::FullPivLU<Eigen::MatrixXd> lu(P);
  if (!lu.isInvertible()) throw InvalidSpec("basis change is singular");
  const Eigen::MatrixXd Pinv = lu.inverse();
  const int n = dim_;
  std::vector<double> out(c_.size(), 0.0);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const Eigen::VectorXd b = bracket(P.col(i), P.col(j));
      const Eigen::VectorXd coords = Pinv * b;
      for (int k = 0; k < n; ++k) out[(i * n + j) * n + k] = coords[k];
    }
  return LieAlgebra(n, std::move(out));
}

Eigen::VectorXd LieAlgebra::bracket(const Eigen::VectorXd& u, const Eigen::VectorXd& v) const {
  require_dim(dim_, static_cast<int>(u.size()));
  require_dim(dim_, static_cast<int>(v.size()));
  Eigen::VectorXd out = Eigen::VectorXd::Zero(dim_);
  for (int i = 0; i < dim_; ++i) {
    if (u[i] == 0.0) continue;
    for (int j = 0; j < dim_; ++j) {
      const double w = u[i] * v[j];
      if (w == 0.0) continue;
      for (int k = 0; k < dim_; ++k) out[k] += w * c(i, j, k);
    }
  }
  return out;
}

Multivector LieAlgebra::bracket(const Multivector& u, const Multivector& v) const {
  require_grade_one(u, "bracket");
  require_grade_one(v, "bracket");
  require_dim(dim_, u.dim());
  require_dim(dim_, v.dim());
  return Multivector::vector(bracket(u.coordinates(), v.coordinates()));
}

double LieAlgebra::antisymmetry_residual() const {
  double r = 0.0;
  for (int i = 0; i < dim_; ++i)
    for (int j = 0; j < dim_; ++j)
      for (int k = 0; k < dim_; ++k) r = std::max(r, std::abs(c(i, j, k) + c(j, i, k)));
  return r;
}

double LieAlgebra::jacobi_residual() const {
  double r = 0.0;
  for (int i = 0; i < dim_; ++i)
    for (int j = 0; j < dim_; ++j)
      for (int k = 0; k < dim_; ++k)
        for (int l = 0; l < dim_; ++l) {
          double s = 0.0;
          for (int m = 0; m < dim_; ++m)
            s += c(i, j, m) * c(m, k, l) + c(j, k, m) * c(m, i, l) + c(k, i, m) * c(m, j, l);
          r = std::max(r, std::abs(s));
        }
  return r;
}

Endomorphism::Endomorphism(Eigen::MatrixXd m) : m_(std::move(m)) {
  if (m_.rows() != m_.cols()) throw InvalidSpec("endomorphism must be square");
}

DualPoint::DualPoint(Eigen::VectorXd coords) : alpha_(std::move(coords)) {
  if (!alpha_.allFinite()) throw InvalidSpec("dual point has non-finite coordinates");
}

// --- multivector operators --------------------------------------------------

Multivector koszul_boundary(const LieAlgebra& alg, const Multivector& a) {
  require_dim(alg.dim(), a.dim());
  const int n = a.dim();
  Multivector out(n);
  for (const auto& [blade, coeff] : a.terms()) {
    const int p = grade_of(blade);
    if (p < 2) continue;
    const std::vector<int> idx = indices_of(blade);
    for (int x = 0; x < p; ++x)
      for (int y = x + 1; y < p; ++y) {
        // 1-based positions x+1, y+1: (-1)^{(x+1)+(y+1)+1}
        const double sign = ((x + y + 1) & 1) ? -1.0 : 1.0;
        const Blade rest = blade & ~(Blade{1} << idx[x]) & ~(Blade{1} << idx[y]);
        for (int m = 0; m < n; ++m) {
          const double cm = alg.c(idx[x], idx[y], m);
          if (cm == 0.0) continue;
          const Blade bit = Blade{1} << m;
          if (rest & bit) continue;
          out.add(rest | bit, sign * wedge_sign(bit, rest) * cm * coeff);
        }
      }
  }
  return out;
}

Multivector insert(const Multivector& v, const Multivector& a) {
  require_grade_one(v, "insert");
  return wedge(v, a);
}

Multivector lie_derivative(const LieAlgebra& alg, const Multivector& u, const Multivector& a) {
  require_grade_one(u, "lie_derivative");
  require_dim(alg.dim(), u.dim());
  return insert(u, koszul_boundary(alg, a)) + koszul_boundary(alg, insert(u, a));
}

Multivector schouten_bracket(const LieAlgebra& alg, const Multivector& g, const Multivector& h) {
  require_dim(alg.dim(), g.dim());
  g.check_same(h);
  const int n = g.dim();
  Multivector out(n);
  for (int q = 1; q <= n; ++q) {
    const Multivector G = g.part(q);
    if (G.is_zero()) continue;
    const Multivector dG = koszul_boundary(alg, G);
    for (int p = 1; p <= n; ++p) {
      const Multivector H = h.part(p);
      if (H.is_zero()) continue;
      Multivector rhs = koszul_boundary(alg, wedge(G, H)) - wedge(dG, H);
      const Multivector GdH = wedge(G, koszul_boundary(alg, H));
      if (q & 1)
        rhs += GdH;  // -(-1)^q = +1 for odd q
      else
        rhs -= GdH;
      // [G,H] = (-1)^{q+1} rhs
      out += (q & 1) ? rhs : -rhs;
    }
  }
  return out;
}

Multivector endo_extension(const Endomorphism& T, const Multivector& a) {
  require_dim(T.dim(), a.dim());
  const int n = a.dim();
  const Eigen::MatrixXd& m = T.matrix();
  Multivector out(n);
  for (const auto& [blade, coeff] : a.terms()) {
    std::vector<int> idx = indices_of(blade);
    for (std::size_t pos = 0; pos < idx.size(); ++pos) {
      const int original = idx[pos];
      for (int k = 0; k < n; ++k) {
        const double t = m(k, original);  // T(e_j) = sum_k T(k, j) e_k
        if (t == 0.0) continue;
        idx[pos] = k;
        const auto [b, sign] = canonicalize(idx);
        if (sign != 0) out.add(b, sign * t * coeff);
      }
      idx[pos] = original;
    }
  }
  return out;
}

Multivector twisted_boundary(const LieAlgebra& alg, const Endomorphism& T, const Multivector& a) {
  return endo_extension(T, koszul_boundary(alg, a)) - koszul_boundary(alg, endo_extension(T, a));
}

Multivector nijenhuis_tensor(const LieAlgebra& alg, const Endomorphism& T, int i, int j, int k) {
  const int n = alg.dim();
  require_dim(n, T.dim());
  for (int x : {i, j, k})
    if (x < 0 || x >= n) throw std::out_of_range("nijenhuis_tensor: index out of range");
  if (i == j || j == k || i == k)
    throw std::invalid_argument("nijenhuis_tensor: indices must be distinct");
  const Multivector e = Multivector::basis(n, {i, j, k});
  return twisted_boundary(alg, T, twisted_boundary(alg, T, e));
}

// --- form operators ---------------------------------------------------------

Form chevalley_d(const LieAlgebra& alg, const Form& b) {
  require_dim(alg.dim(), b.dim());
  const int n = b.dim();
  Form out(n);
  std::vector<int> grades;
  for (const auto& [blade, coeff] : b.terms()) {
    const int p = grade_of(blade);
    if (std::find(grades.begin(), grades.end(), p) == grades.end()) grades.push_back(p);
  }
  for (int p : grades) {
    for_each_blade(n, p + 1, [&](Blade target) {
      const std::vector<int> idx = indices_of(target);
      double value = 0.0;
      for (int x = 0; x <= p; ++x)
        for (int y = x + 1; y <= p; ++y) {
          const double sign = ((x + y) & 1) ? -1.0 : 1.0;
          const Blade rest = target & ~(Blade{1} << idx[x]) & ~(Blade{1} << idx[y]);
          for (int m = 0; m < n; ++m) {
            const double cm = alg.c(idx[x], idx[y], m);
            if (cm == 0.0) continue;
            const Blade bit = Blade{1} << m;
            if (rest & bit) continue;
            value += sign * cm * wedge_sign(bit, rest) * b[rest | bit];
          }
        }
      out.add(target, value);
    });
  }
  return out;
}

Form contract(const Multivector& v, const Form& b) {
  require_grade_one(v, "contract");
  v.check_same(Multivector(b.dim()));
  const int n = b.dim();
  Form out(n);
  for (int k = 0; k < n; ++k) {
    const Blade bit = Blade{1} << k;
    const double vk = v[bit];
    if (vk == 0.0) continue;
    for (const auto& [blade, coeff] : b.terms()) {
      if (!(blade & bit)) continue;
      const int before = std::popcount(blade & (bit - 1));
      out.add(blade & ~bit, ((before & 1) ? -1.0 : 1.0) * vk * coeff);
    }
  }
  return out;
}

Form lie_derivative(const LieAlgebra& alg, const Multivector& v, const Form& b) {
  require_grade_one(v, "lie_derivative");
  return contract(v, chevalley_d(alg, b)) + chevalley_d(alg, contract(v, b));
}

double pairing(const Multivector& a, const Form& b) {
  if (a.dim() != b.dim()) throw DimensionMismatch("pairing: different dimensions");
  if (a.is_zero() || b.is_zero()) return 0.0;
  const int p = grade_of(a.terms().begin()->first);
  if (!a.is_homogeneous_of(p) || !b.is_homogeneous_of(p))
    throw std::invalid_argument("pairing: grade mismatch");
  double s = 0.0;
  for (const auto& [blade, coeff] : a.terms()) s += coeff * b[blade];
  return s;
}

double lie_poisson_bivector(const LieAlgebra& alg, int i, int j, const DualPoint& alpha) {
  const int n = alg.dim();
  if (i < 0 || j < 0 || i >= n || j >= n)
    throw std::out_of_range("lie_poisson_bivector: index out of range");
  require_dim(n, alpha.dim());
  double s = 0.0;
  for (int k = 0; k < n; ++k) s += alg.c(i, j, k) * alpha.coords()[k];
  return s;
}

}  // namespace stratafold::exterior
