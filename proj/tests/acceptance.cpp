// One PASS/FAIL line per acceptance criterion; exit status 1 if any fails.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numbers>
#include <sstream>
#include <string>

#include "cli.hpp"
#include "stratafold/clifford.hpp"
#include "stratafold/dec.hpp"
#include "stratafold/exterior.hpp"
#include "stratafold/qgeom.hpp"
#include "stratafold/statgeom.hpp"
#include "support/quantum.hpp"
#include "support/random.hpp"

namespace ex = stratafold::exterior;
namespace cl = stratafold::clifford;
namespace dec = stratafold::dec;
namespace q = stratafold::qgeom;
namespace sg = stratafold::statgeom;
using testsupport::Rng;

namespace {

int failures = 0;

void report(int id, const char* title, bool ok, const std::string& detail) {
  std::printf("%s  %2d  %-34s %s\n", ok ? "PASS" : "FAIL", id, title, detail.c_str());
  if (!ok) ++failures;
}

std::string sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

double mdiff(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) { return (a - b).cwiseAbs().maxCoeff(); }

// --- 1 ---------------------------------------------------------------------------

void phase_damping_field() {
  Rng rng(101);
  double worst = 0.0;
  for (int t = 0; t < 100; ++t) {
    const double gamma = rng.uniform(0.0, 1.0);
    const Eigen::Vector3d x = testsupport::random_bloch(rng);
    const q::DensityState rho = q::DensityState::bloch(x[0], x[1], x[2]);
    const Eigen::Vector3d want(-2 * gamma * x[0], -2 * gamma * x[1], 0.0);
    const Eigen::VectorXd got = q::kl_vector_field(q::LindbladSpec::phase_damping(gamma), rho).tangent_coords();
    worst = std::max(worst, (got - want).cwiseAbs().maxCoeff());
  }
  report(1, "phase-damping field", worst <= 1e-12, "max_err=" + sci(worst) + " tol=1e-12 points=100");
}

// --- 2 ---------------------------------------------------------------------------

// -i[H, rho] - {V, rho}/2 + sum V_j rho V_j^+ written out directly.
Eigen::MatrixXcd generator_oracle(const q::LindbladSpec& spec, const Eigen::MatrixXcd& rho) {
  const std::complex<double> i(0, 1);
  const Eigen::MatrixXcd& h = spec.hamiltonian().matrix();
  Eigen::MatrixXcd out = -i * (h * rho - rho * h);
  for (const Eigen::MatrixXcd& v : spec.collapse()) {
    const Eigen::MatrixXcd vv = v.adjoint() * v;
    out += v * rho * v.adjoint() - 0.5 * (vv * rho + rho * vv);
  }
  return out;
}

void generator_oracle_check() {
  Rng rng(102);
  double worst = 0.0;
  for (int t = 0; t < 200; ++t) {
    const int n = 2 + t % 3;
    const q::LindbladSpec spec = testsupport::random_spec(rng, n);
    const q::DensityState rho = testsupport::random_state(rng, n, rng.integer(1, n));
    const Eigen::MatrixXcd field = q::kl_vector_field(spec, rho).matrix();
    worst = std::max(worst, mdiff(field, generator_oracle(spec, rho.matrix())));
  }
  report(2, "generator oracle", worst <= 1e-10, "max_err=" + sci(worst) + " tol=1e-10 pairs=200 n=2,3,4");
}

// --- 3 ---------------------------------------------------------------------------

void stratum_transversality() {
  bool ranks_ok = true;
  double drift = 0.0, min_eig = 0.0, decay = 0.0;
  int samples = 0;
  for (double gamma : {0.25, 0.5, 1.0})
    for (double theta : {std::numbers::pi / 2, 0.7, 2.5}) {
      const double x1 = std::sin(theta), x3 = std::cos(theta);
      q::IntegrateOptions opt;
      opt.t_max = 2.0;
      opt.dt = 1e-3;
      const auto traj = q::integrate(q::LindbladSpec::phase_damping(gamma), q::DensityState::bloch(x1, 0, x3), opt);
      ranks_ok = ranks_ok && traj.size() == 2001 && traj.front().rank == 1;
      for (std::size_t s = 1; s < traj.size(); ++s) ranks_ok = ranks_ok && traj[s].rank == 2;
      for (const q::Sample& s : traj) {
        drift = std::max(drift, s.trace_drift);
        min_eig = std::min(min_eig, s.min_eigenvalue);
        decay = std::max(decay, std::abs(s.coords[1] - x1 * std::exp(-2 * gamma * s.tau)));
        ++samples;
      }
    }
  const bool ok = ranks_ok && drift <= 1e-8 && min_eig >= -1e-8 && decay <= 1e-6;
  report(3, "stratum transversality", ok,
         std::string("ranks=") + (ranks_ok ? "1->2" : "wrong") + " drift=" + sci(drift) + " min_eig=" + sci(min_eig) +
             " decay_err=" + sci(decay) + " samples=" + std::to_string(samples));
}

// --- 4 ---------------------------------------------------------------------------

// (n^2 - 1) - rank of B -> K^+ B K over the traceless Hermitian spanning set
// {E_jk + E_kj, i(E_jk - E_kj), E_jj - E_nn}.
int tangent_count(const Eigen::MatrixXcd& rho) {
  const int n = static_cast<int>(rho.rows());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(rho);
  int zeros = 0;
  for (int i = 0; i < n; ++i) zeros += std::abs(es.eigenvalues()[i]) < 1e-10 ? 1 : 0;
  if (zeros == 0) return n * n - 1;
  const Eigen::MatrixXcd k = es.eigenvectors().leftCols(zeros);
  std::vector<Eigen::MatrixXcd> span;
  const std::complex<double> i(0, 1);
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b) {
      Eigen::MatrixXcd s = Eigen::MatrixXcd::Zero(n, n), t = Eigen::MatrixXcd::Zero(n, n);
      s(a, b) = s(b, a) = 1.0;
      t(a, b) = -i;
      t(b, a) = i;
      span.push_back(s);
      span.push_back(t);
    }
  for (int a = 0; a + 1 < n; ++a) {
    Eigen::MatrixXcd d = Eigen::MatrixXcd::Zero(n, n);
    d(a, a) = 1.0;
    d(n - 1, n - 1) = -1.0;
    span.push_back(d);
  }
  Eigen::MatrixXd images(2 * zeros * zeros, static_cast<Eigen::Index>(span.size()));
  for (std::size_t c = 0; c < span.size(); ++c) {
    const Eigen::MatrixXcd img = k.adjoint() * span[c] * k;
    for (int r = 0; r < zeros * zeros; ++r) {
      images(2 * r, static_cast<Eigen::Index>(c)) = img(r / zeros, r % zeros).real();
      images(2 * r + 1, static_cast<Eigen::Index>(c)) = img(r / zeros, r % zeros).imag();
    }
  }
  Eigen::FullPivLU<Eigen::MatrixXd> lu(images);
  lu.setThreshold(1e-10);
  return n * n - 1 - static_cast<int>(lu.rank());
}

void stratum_dimensions() {
  Rng rng(104);
  bool ok = true;
  int pairs = 0;
  for (int n = 2; n <= 4; ++n)
    for (int k = 1; k <= n; ++k)
      for (int t = 0; t < 5; ++t) {
        const q::DensityState rho = testsupport::random_state(rng, n, k);
        const q::StratumInfo info = q::rank_and_stratum(rho.dual());
        const int want = 2 * n * k - k * k - 1;
        ok = ok && info.k == k && info.stratum_dim == want && tangent_count(rho.matrix()) == want &&
             q::tangent_space_dimension(rho.dual()) == want;
        ++pairs;
      }
  report(4, "stratum dimensions", ok, std::string(ok ? "exact" : "mismatch") + " (n,k) n<=4 states=" +
                                          std::to_string(pairs));
}

// --- 5 ---------------------------------------------------------------------------

void commutation_relations() {
  Rng rng(105);
  const double h = 1e-5;
  double worst = 0.0;
  for (int n = 2; n <= 3; ++n)
    for (int t = 0; t < 50; ++t) {
      const auto a = testsupport::random_observable(rng, n), b = testsupport::random_observable(rng, n);
      const auto ab = q::lie_product(a, b);
      const Eigen::VectorXd x = testsupport::random_state(rng, n).coords();
      using testsupport::fd_bracket;
      using testsupport::x_field;
      using testsupport::y_field;
      const auto err = [&](const Eigen::VectorXd& u, const Eigen::VectorXd& v) {
        worst = std::max(worst, (u - v).cwiseAbs().maxCoeff());
      };
      err(fd_bracket(x_field(a), x_field(b), x, h), x_field(ab)(x));
      err(fd_bracket(x_field(a), y_field(b), x, h), y_field(ab)(x));
      err(fd_bracket(y_field(a), y_field(b), x, h), -x_field(ab)(x));
    }
  report(5, "commutation relations", worst <= 1e-6, "max_err=" + sci(worst) + " tol=1e-6 h=1e-5 pairs=50 n=2,3");
}

// --- 6 ---------------------------------------------------------------------------

void dec_dispersion() {
  double eig = 0.0, square = 0.0;
  int rings = 0;
  for (int n = 3; n <= 64; ++n)
    for (double l : {0.5, 1.0, 2.0}) {
      const dec::SimplicialRing ring(n, l);
      std::vector<double> want;
      for (int m = 0; m < n; ++m) {
        const double lam = (2.0 / l) * std::abs(std::sin(std::numbers::pi * m / n));
        want.push_back(lam);
        want.push_back(-lam);
      }
      std::sort(want.begin(), want.end());
      const auto spec = dec::dk_spectrum(ring);
      for (std::size_t r = 0; r < want.size(); ++r) eig = std::max(eig, std::abs(spec[r].numeric - want[r]));
      const Eigen::MatrixXcd a = dec::dirac_kahler_matrix(ring);
      const Eigen::MatrixXcd lap = dec::laplacian_matrix(ring).cast<std::complex<double>>();
      square = std::max(square, mdiff(a * a, lap));
      ++rings;
    }
  report(6, "dec dispersion", eig <= 1e-10 && square <= 1e-12,
         "eig_err=" + sci(eig) + " tol=1e-10 square_err=" + sci(square) + " tol=1e-12 rings=" + std::to_string(rings));
}

// --- 7 ---------------------------------------------------------------------------

void exterior_identities() {
  Rng rng(107);
  const std::vector<std::pair<const char*, ex::LieAlgebra>> algebras{
      {"so3", ex::LieAlgebra::so3()}, {"heisenberg", ex::LieAlgebra::heisenberg()}, {"random4", testsupport::random_algebra4(rng)}};
  double bb = 0, dd = 0, cartan = 0, mar = 0, ll = 0, tr = 0, jac = 0;
  for (const auto& [name, alg] : algebras) {
    const int n = alg.dim();
    jac = std::max(jac, alg.jacobi_residual());
    for (int t = 0; t < 500; ++t) {
      const ex::Multivector a = rng.inhomogeneous<ex::VectorTag>(n);
      bb = std::max(bb, ex::koszul_boundary(alg, ex::koszul_boundary(alg, a)).norm_inf());
      const ex::Form b = rng.inhomogeneous<ex::CovectorTag>(n);
      dd = std::max(dd, ex::chevalley_d(alg, ex::chevalley_d(alg, b)).norm_inf());

      const ex::Multivector u = rng.vec(n), v = rng.vec(n);
      // Cartan: i_v d + d i_v against (L_v alpha)(w) = -alpha([v, w]) on 1-forms.
      const ex::Form alpha = rng.form(n, 1);
      const ex::Form lv = ex::contract(v, ex::chevalley_d(alg, alpha)) + ex::chevalley_d(alg, ex::contract(v, alpha));
      for (int w = 0; w < n; ++w) {
        const Eigen::VectorXd ad = alg.bracket(v.coordinates(), Eigen::VectorXd::Unit(n, w));
        cartan = std::max(cartan, std::abs(lv.coefficient({w}) + alpha.coordinates().dot(ad)));
      }
      cartan = std::max(cartan, ex::max_abs_diff(ex::lie_derivative(alg, v, b),
                                                 ex::contract(v, ex::chevalley_d(alg, b)) +
                                                     ex::chevalley_d(alg, ex::contract(v, b))));
      // [i_v d + d i_v, i_u] = i_[v,u]
      const ex::Form lhs = ex::lie_derivative(alg, v, ex::contract(u, b)) - ex::contract(u, ex::lie_derivative(alg, v, b));
      mar = std::max(mar, ex::max_abs_diff(lhs, ex::contract(alg.bracket(v, u), b)));
      const ex::Form comm = ex::lie_derivative(alg, u, ex::lie_derivative(alg, v, b)) -
                            ex::lie_derivative(alg, v, ex::lie_derivative(alg, u, b));
      ll = std::max(ll, ex::max_abs_diff(comm, ex::lie_derivative(alg, alg.bracket(u, v), b)));
      const int p = rng.integer(0, n - 1);
      const ex::Multivector hi = rng.multivector(n, p + 1);
      const ex::Form lo = rng.form(n, p);
      tr = std::max(tr, std::abs(ex::pairing(ex::koszul_boundary(alg, hi), lo) + ex::pairing(hi, ex::chevalley_d(alg, lo))));
    }
  }
  const double worst = std::max({bb, dd, cartan, mar, ll, tr});
  report(7, "exterior identities", worst <= 1e-12 && jac <= 1e-12,
         "dd_bd=" + sci(bb) + " dd=" + sci(dd) + " cartan=" + sci(cartan) + " L_i=" + sci(mar) + " L_L=" + sci(ll) +
             " transpose=" + sci(tr) + " tol=1e-12 cases=500x3");
}

// --- 8 ---------------------------------------------------------------------------

void clifford_relations() {
  Rng rng(108);
  double rel = 0, assoc = 0, deriv = 0;
  int cases = 0;
  for (int n = 2; n <= 4; ++n)
    for (const cl::MetricSpec& m : {cl::MetricSpec::euclidean(n), cl::MetricSpec::lorentzian(n)})
      for (int t = 0; t < 100; ++t) {
        const Eigen::VectorXd c = rng.vector(n);
        const ex::Form v = ex::Form::vector(c);
        double g = 0.0;
        for (int i = 0; i < n; ++i) g += c[i] * c[i] / m.g()(i, i);
        rel = std::max(rel, ex::max_abs_diff(cl::vee_product(m, v, v), ex::Form::scalar(n, g)));
        const ex::Form a = rng.inhomogeneous<ex::CovectorTag>(n), b = rng.inhomogeneous<ex::CovectorTag>(n),
                       d = rng.inhomogeneous<ex::CovectorTag>(n);
        assoc = std::max(assoc, ex::max_abs_diff(cl::vee_product(m, cl::vee_product(m, a, b), d),
                                                 cl::vee_product(m, a, cl::vee_product(m, b, d))));
        const ex::Multivector w = rng.vec(n);
        deriv = std::max(deriv, ex::max_abs_diff(ex::contract(w, cl::vee_product(m, a, b)),
                                                 cl::vee_product(m, ex::contract(w, a), b) +
                                                     cl::vee_product(m, cl::grade_involution(a), ex::contract(w, b))));
        ++cases;
      }
  const ex::LieAlgebra so3 = ex::LieAlgebra::so3();
  const cl::MetricSpec e3 = cl::MetricSpec::euclidean(3);
  const ex::Form a = ex::Form::basis(3, {0}), b = ex::Form::basis(3, {1, 2});
  const double witness = ex::max_abs_diff(
      ex::chevalley_d(so3, cl::vee_product(e3, a, b)),
      cl::vee_product(e3, ex::chevalley_d(so3, a), b) + cl::vee_product(e3, cl::grade_involution(a), ex::chevalley_d(so3, b)));
  const double worst = std::max({rel, assoc, deriv});
  report(8, "clifford relations", worst <= 1e-10 && witness > 0.5,
         "vv=" + sci(rel) + " assoc=" + sci(assoc) + " i_v=" + sci(deriv) + " tol=1e-10 cases=" + std::to_string(cases) +
             " d_witness=" + sci(witness));
}

// --- 9 ---------------------------------------------------------------------------

void lie_jordan_axioms() {
  Rng rng(109);
  double worst = 0.0;
  const std::complex<double> i(0, 1);
  for (int t = 0; t < 500; ++t) {
    const int n = 1 + t % 5;
    const auto a = testsupport::random_observable(rng, n), b = testsupport::random_observable(rng, n),
               c = testsupport::random_observable(rng, n);
    const auto lie = [](const auto& x, const auto& y) { return q::lie_product(x, y); };
    const auto jor = [](const auto& x, const auto& y) { return q::jordan_product(x, y); };
    worst = std::max(worst, mdiff(lie(jor(a, b), c).matrix(), (jor(a, lie(b, c)) + jor(lie(a, c), b)).matrix()));
    worst = std::max(worst, mdiff((jor(a, jor(b, c)) - jor(jor(a, b), c)).matrix(),
                                  (lie(a, lie(b, c)) - lie(lie(a, b), c)).matrix()));
    worst = std::max(worst, mdiff(a.matrix() * b.matrix(), jor(a, b).matrix() + i * lie(a, b).matrix()));
  }
  report(9, "lie-jordan axioms", worst <= 1e-12, "max_err=" + sci(worst) + " tol=1e-12 triples=500 n<=5");
}

// --- 10 --------------------------------------------------------------------------

void fisher_pullback() {
  Rng rng(110);
  double residual = 0.0, sphere = 0.0;
  for (int t = 0; t < 1000; ++t) {
    const int n = 2 + t % 7;
    Eigen::VectorXd p(n);
    for (int j = 0; j < n; ++j) p[j] = -std::log(rng.uniform(1e-12, 1.0));
    const sg::ProbabilityVector pv(p / p.sum());
    Eigen::VectorXd u = rng.vector(n), v = rng.vector(n);
    u.array() -= u.mean();
    v.array() -= v.mean();
    residual = std::max(residual, sg::pullback_residual(pv, u, v));
    sphere = std::max(sphere, std::abs(sg::sqrt_embed(pv).squaredNorm() - 1.0));
  }
  report(10, "fisher-rao pullback", residual <= 1e-10 && sphere <= 1e-12,
         "residual=" + sci(residual) + " tol=1e-10 sphere=" + sci(sphere) + " tol=1e-12 points=1000 N=2..8");
}

// --- 11 --------------------------------------------------------------------------

void hodge_decomposition() {
  Rng rng(111);
  double reassembly = 0.0, ortho = 0.0;
  for (int t = 0; t < 100; ++t) {
    const int n = rng.integer(3, 32);
    std::vector<double> l(static_cast<std::size_t>(n));
    const bool uniform = t % 2 == 0;
    for (double& x : l) x = uniform ? 1.0 : rng.uniform(0.3, 2.0);
    const dec::SimplicialRing ring(l);
    const dec::Cochain a{t % 4 < 2 ? 0 : 1, rng.vector(n)};
    const dec::HodgeParts parts = dec::hodge_decompose(ring, a);
    reassembly = std::max(reassembly,
                          (parts.exact.values + parts.coexact.values + parts.harmonic.values - a.values).cwiseAbs().maxCoeff());
    ortho = std::max({ortho, std::abs(dec::metric_inner(ring, parts.exact, parts.coexact)),
                      std::abs(dec::metric_inner(ring, parts.exact, parts.harmonic)),
                      std::abs(dec::metric_inner(ring, parts.coexact, parts.harmonic))});
  }
  report(11, "hodge decomposition", reassembly <= 1e-10 && ortho <= 1e-10,
         "reassembly=" + sci(reassembly) + " orthogonality=" + sci(ortho) + " tol=1e-10 cochains=100 N<=32");
}

// --- 12 --------------------------------------------------------------------------

void cli_determinism() {
  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path() / "stratafold_acceptance";
  fs::create_directories(dir);
  const auto write = [&](const char* name, const char* text) {
    std::ofstream(dir / name) << text;
    return (dir / name).string();
  };
  const std::string pd = write("pd.json", R"({"t_max": 2, "dt": 1e-3, "spec": {"dim": 2,
      "V": [[[0.7071067811865476, 0], [0, 0.7071067811865476]], [[0.7071067811865476, 0], [0, -0.7071067811865476]]]},
      "initial": {"coords": [1, 0, 0]}})");
  const std::string rings = write("rings.json", R"({"rings": [{"sites": 3}, {"sites": 64, "spacing": 0.5},
      {"lengths": [1, 2, 0.5, 1.5]}]})");
  const std::string fisher = write("fisher.json", R"({"samples": 100, "outcomes": 5, "seed": 3})");
  const std::vector<std::vector<std::string>> configs{
      {"lindblad", "--config", pd},           {"lindblad", "--config", pd, "--format", "json"},
      {"dec-spectrum", "--config", rings},    {"dec-spectrum", "--sites", "32", "--spacing", "2"},
      {"algebra-check", "--seed", "5"},       {"fisher", "--config", fisher}};
  bool ok = true;
  for (const auto& c : configs) {
    std::ostringstream o1, o2, e1, e2;
    const int r1 = stratafold::cli::run_cli(c, o1, e1);
    const int r2 = stratafold::cli::run_cli(c, o2, e2);
    ok = ok && r1 == 0 && r2 == 0 && !o1.str().empty() && o1.str() == o2.str();
  }
  report(12, "cli determinism", ok, "configs=" + std::to_string(configs.size()) + " byte-identical x2");
}

}  // namespace

int main() {
  const std::vector<std::function<void()>> criteria{
      phase_damping_field, generator_oracle_check, stratum_transversality, stratum_dimensions,
      commutation_relations, dec_dispersion, exterior_identities, clifford_relations,
      lie_jordan_axioms, fisher_pullback, hodge_decomposition, cli_determinism};
  for (const auto& c : criteria) c();
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
