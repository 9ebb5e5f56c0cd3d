#include "stratafold/checks.hpp"

#include <algorithm>
#include <cmath>

#include "stratafold/clifford.hpp"
#include "stratafold/qgeom.hpp"

namespace stratafold::checks {

using exterior::Blade;
using exterior::Form;
using exterior::LieAlgebra;
using exterior::Multivector;

namespace {

template <class Tag>
exterior::Graded<Tag> random_graded(Rng& rng, int n, int grade) {
  exterior::Graded<Tag> g(n);
  for (Blade b = 0; b < (Blade{1} << n); ++b)
    if (grade < 0 || exterior::grade_of(b) == grade) g.add(b, rng.uniform(-1.0, 1.0));
  return g;
}

Eigen::VectorXd random_vector(Rng& rng, int n) {
  Eigen::VectorXd v(n);
  for (int i = 0; i < n; ++i) v[i] = rng.uniform(-1.0, 1.0);
  return v;
}

qgeom::Matrix random_complex(Rng& rng, int rows, int cols) {
  qgeom::Matrix m(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) m(i, j) = qgeom::Complex(rng.normal(), rng.normal());
  return m;
}

qgeom::HermitianOperator random_observable(Rng& rng, int n) { return qgeom::hermitian_part(random_complex(rng, n, n)); }

qgeom::DensityState random_state(Rng& rng, int n) {
  const qgeom::Matrix a = random_complex(rng, n, n);
  qgeom::Matrix rho = a * a.adjoint();
  rho /= rho.trace().real();
  return qgeom::DensityState(0.5 * (rho + rho.adjoint()));
}

// Accumulates the worst residual of one identity.
struct Tally {
  CheckResult r;
  Tally(std::string suite, std::string name, double tol) : r{std::move(suite), std::move(name), 0.0, tol, false, 0} {}
  void add(double residual) {
    r.value = std::isnan(residual) || std::isnan(r.value) ? NAN : std::max(r.value, residual);
    ++r.cases;
  }
};

double op_diff(const qgeom::HermitianOperator& a, const qgeom::HermitianOperator& b) {
  return (a.matrix() - b.matrix()).cwiseAbs().maxCoeff();
}

}  // namespace

std::vector<CheckResult> exterior_suite(const LieAlgebra& alg, const std::string& name, Rng& rng, int cases) {
  const int n = alg.dim();
  Tally jacobi(name, "jacobi", 1e-12);
  Tally bb(name, "boundary_squared", 1e-12);
  Tally dd(name, "differential_squared", 1e-12);
  Tally cartan(name, "cartan_coadjoint", 1e-12);
  Tally li(name, "lie_derivative_insertion_commutator", 1e-12);
  Tally ll_form(name, "lie_derivative_commutator_forms", 1e-12);
  Tally ll_mv(name, "lie_derivative_commutator_multivectors", 1e-12);
  Tally transpose(name, "boundary_differential_transpose", 1e-12);
  Tally schouten(name, "schouten_on_vectors", 1e-12);
  jacobi.add(alg.jacobi_residual());

  for (int t = 0; t < cases; ++t) {
    const Multivector a = random_graded<exterior::VectorTag>(rng, n, -1);
    bb.add(exterior::koszul_boundary(alg, exterior::koszul_boundary(alg, a)).norm_inf());
    const Form b = random_graded<exterior::CovectorTag>(rng, n, -1);
    dd.add(exterior::chevalley_d(alg, exterior::chevalley_d(alg, b)).norm_inf());

    const Eigen::VectorXd uc = random_vector(rng, n), vc = random_vector(rng, n);
    const Multivector u = Multivector::vector(uc), v = Multivector::vector(vc);
    const Multivector uv = alg.bracket(u, v);

    // (L_v alpha)(w) = -alpha([v, w]) on 1-forms.
    const Form alpha = random_graded<exterior::CovectorTag>(rng, n, 1);
    const Form lv = exterior::lie_derivative(alg, v, alpha);
    double worst = 0.0;
    for (int w = 0; w < n; ++w) {
      const Eigen::VectorXd ad = alg.bracket(vc, Eigen::VectorXd::Unit(n, w));
      worst = std::max(worst, std::abs(lv.coefficient({w}) + alpha.coordinates().dot(ad)));
    }
    cartan.add(worst);

    const Form lhs = exterior::lie_derivative(alg, v, exterior::contract(u, b)) -
                     exterior::contract(u, exterior::lie_derivative(alg, v, b));
    li.add(exterior::max_abs_diff(lhs, exterior::contract(alg.bracket(v, u), b)));

    const Form comm = exterior::lie_derivative(alg, u, exterior::lie_derivative(alg, v, b)) -
                      exterior::lie_derivative(alg, v, exterior::lie_derivative(alg, u, b));
    ll_form.add(exterior::max_abs_diff(comm, exterior::lie_derivative(alg, uv, b)));

    const Multivector mcomm = exterior::lie_derivative(alg, u, exterior::lie_derivative(alg, v, a)) -
                              exterior::lie_derivative(alg, v, exterior::lie_derivative(alg, u, a));
    ll_mv.add(exterior::max_abs_diff(mcomm, exterior::lie_derivative(alg, uv, a)));

    const int p = rng.integer(0, std::max(0, n - 1));
    const Multivector hi = random_graded<exterior::VectorTag>(rng, n, p + 1);
    const Form lo = random_graded<exterior::CovectorTag>(rng, n, p);
    transpose.add(std::abs(exterior::pairing(exterior::koszul_boundary(alg, hi), lo) +
                           exterior::pairing(hi, exterior::chevalley_d(alg, lo))));

    schouten.add(exterior::max_abs_diff(exterior::schouten_bracket(alg, u, v), uv));
  }
  return {jacobi.r, bb.r, dd.r, cartan.r, li.r, ll_form.r, ll_mv.r, transpose.r, schouten.r};
}

std::vector<CheckResult> clifford_suite(Rng& rng, int cases) {
  Tally relation("clifford", "vee_square_is_metric", 1e-10);
  Tally assoc("clifford", "vee_associativity", 1e-10);
  Tally deriv("clifford", "contraction_derives_vee", 1e-10);
  for (int n = 2; n <= 4; ++n)
    for (const clifford::MetricSpec& m : {clifford::MetricSpec::euclidean(n), clifford::MetricSpec::lorentzian(n)})
      for (int t = 0; t < cases; ++t) {
        const Eigen::VectorXd c = random_vector(rng, n);
        const Form v = Form::vector(c);
        relation.add(exterior::max_abs_diff(clifford::vee_product(m, v, v), Form::scalar(n, m.covector_product(c, c))));
        const Form a = random_graded<exterior::CovectorTag>(rng, n, -1);
        const Form b = random_graded<exterior::CovectorTag>(rng, n, -1);
        const Form d = random_graded<exterior::CovectorTag>(rng, n, -1);
        assoc.add(exterior::max_abs_diff(clifford::vee_product(m, clifford::vee_product(m, a, b), d),
                                         clifford::vee_product(m, a, clifford::vee_product(m, b, d))));
        const Multivector w = Multivector::vector(random_vector(rng, n));
        const Form lhs = exterior::contract(w, clifford::vee_product(m, a, b));
        const Form rhs = clifford::vee_product(m, exterior::contract(w, a), b) +
                         clifford::vee_product(m, clifford::grade_involution(a), exterior::contract(w, b));
        deriv.add(exterior::max_abs_diff(lhs, rhs));
      }

  // d(e^1 v (e^2 ^ e^3)) against the derivation rule on so(3).
  const LieAlgebra so3 = LieAlgebra::so3();
  const clifford::MetricSpec e3 = clifford::MetricSpec::euclidean(3);
  const Form a = Form::basis(3, {0}), b = Form::basis(3, {1, 2});
  const Form lhs = exterior::chevalley_d(so3, clifford::vee_product(e3, a, b));
  const Form rhs = clifford::vee_product(e3, exterior::chevalley_d(so3, a), b) +
                   clifford::vee_product(e3, clifford::grade_involution(a), exterior::chevalley_d(so3, b));
  Tally witness("clifford", "differential_derivation_defect", 0.5);
  witness.r.at_least = true;
  witness.add(exterior::max_abs_diff(lhs, rhs));
  return {relation.r, assoc.r, deriv.r, witness.r};
}

std::vector<CheckResult> lie_jordan_suite(int n, Rng& rng, int cases) {
  const std::string suite = "lie_jordan_n" + std::to_string(n);
  Tally derivation(suite, "bracket_derives_jordan", 1e-12);
  Tally associator(suite, "associator_identity", 1e-12);
  Tally product(suite, "product_reconstruction", 1e-12);
  const qgeom::Complex i(0, 1);
  for (int t = 0; t < cases; ++t) {
    const auto a = random_observable(rng, n), b = random_observable(rng, n), c = random_observable(rng, n);
    derivation.add(op_diff(qgeom::lie_product(qgeom::jordan_product(a, b), c),
                           qgeom::jordan_product(a, qgeom::lie_product(b, c)) +
                               qgeom::jordan_product(qgeom::lie_product(a, c), b)));
    const auto lhs = qgeom::jordan_product(a, qgeom::jordan_product(b, c)) -
                     qgeom::jordan_product(qgeom::jordan_product(a, b), c);
    const auto rhs = qgeom::lie_product(a, qgeom::lie_product(b, c)) - qgeom::lie_product(qgeom::lie_product(a, b), c);
    associator.add(op_diff(lhs, rhs));
    product.add((a.matrix() * b.matrix() - qgeom::jordan_product(a, b).matrix() -
                 i * qgeom::lie_product(a, b).matrix())
                    .cwiseAbs()
                    .maxCoeff());
  }
  return {derivation.r, associator.r, product.r};
}

std::vector<CheckResult> pauli_suite(Rng& rng, int cases) {
  using qgeom::HermitianOperator;
  Tally table("pauli", "bracket_table", 1e-15);
  for (int a = 1; a <= 3; ++a) {
    const int b = a % 3 + 1, c = b % 3 + 1;
    table.add(op_diff(qgeom::lie_product(HermitianOperator::pauli(a), HermitianOperator::pauli(b)),
                      HermitianOperator::pauli(c)));
    table.add(op_diff(qgeom::jordan_product(HermitianOperator::pauli(a), HermitianOperator::pauli(a)),
                      HermitianOperator::identity(2)));
  }

  Tally damping("pauli", "phase_damping_field", 1e-12);
  Tally oracle("pauli", "generator_oracle", 1e-10);
  for (int t = 0; t < cases; ++t) {
    const double gamma = rng.uniform();
    const qgeom::LindbladSpec pd = qgeom::LindbladSpec::phase_damping(gamma);
    Eigen::Vector3d x(rng.normal(), rng.normal(), rng.normal());
    x *= std::cbrt(rng.uniform()) / x.norm();
    const qgeom::DensityState rho = qgeom::DensityState::bloch(x[0], x[1], x[2]);
    const Eigen::Vector3d want(-2 * gamma * x[0], -2 * gamma * x[1], 0.0);
    damping.add((qgeom::kl_vector_field(pd, rho).tangent_coords() - want).cwiseAbs().maxCoeff());

    std::vector<qgeom::Matrix> v;
    const int r = rng.integer(1, 3);
    for (int j = 0; j < r; ++j) v.push_back(0.5 * random_complex(rng, 2, 2));
    const qgeom::LindbladSpec spec(random_observable(rng, 2), std::move(v));
    const qgeom::DensityState s = random_state(rng, 2);
    const Eigen::VectorXd field = qgeom::kl_vector_field(spec, s).coords();
    const Eigen::VectorXd gen = qgeom::DualElement(qgeom::lindblad_generator(spec, s)).coords();
    oracle.add((field - gen).cwiseAbs().maxCoeff());
  }
  std::vector<CheckResult> out{table.r, damping.r, oracle.r};
  for (CheckResult& c : lie_jordan_suite(2, rng, cases)) {
    c.suite = "pauli";
    out.push_back(std::move(c));
  }
  return out;
}

std::vector<CheckResult> default_suites(std::uint64_t seed, int cases) {
  Rng rng(seed);
  std::vector<CheckResult> out;
  const auto append = [&out](std::vector<CheckResult> part) {
    out.insert(out.end(), std::make_move_iterator(part.begin()), std::make_move_iterator(part.end()));
  };
  append(exterior_suite(LieAlgebra::so3(), "so3", rng, cases));
  append(exterior_suite(LieAlgebra::heisenberg(), "heisenberg", rng, cases));
  append(exterior_suite(LieAlgebra::abelian(3), "abelian3", rng, cases));
  append(clifford_suite(rng, std::max(1, cases / 4)));
  append(pauli_suite(rng, cases));
  return out;
}

}  // namespace stratafold::checks
