#include "stratafold/dec.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <tuple>

namespace stratafold::dec {

namespace {

void check_lengths(const std::vector<double>& l) {
  if (l.size() < 3) throw InvalidSpec("ring needs at least 3 sites");
  for (double x : l)
    if (!(x > 0.0) || !std::isfinite(x)) throw InvalidSpec("edge lengths must be positive and finite");
}

void check_size(const SimplicialRing& ring, const Eigen::VectorXd& v) {
  if (v.size() != ring.sites()) throw DimensionMismatch("cochain length differs from ring size");
}

void check_degree(int degree) {
  if (degree != 0 && degree != 1) throw DomainError("degree must be 0 or 1 on a 1-D complex");
}

}  // namespace

SimplicialRing::SimplicialRing(int sites, double spacing) {
  if (sites < 3) throw InvalidSpec("ring needs at least 3 sites");
  lengths_.assign(static_cast<std::size_t>(sites), spacing);
  check_lengths(lengths_);
}

SimplicialRing::SimplicialRing(std::vector<double> edge_lengths) : lengths_(std::move(edge_lengths)) {
  check_lengths(lengths_);
  uniform_ = std::all_of(lengths_.begin(), lengths_.end(),
                         [&](double x) { return x == lengths_.front(); });
}

DualCell dual_cell(const SimplicialRing& ring, int primal_index, int primal_degree) {
  check_degree(primal_degree);
  if (primal_index < 0 || primal_index >= ring.sites()) throw DomainError("simplex index out of range");
  const double volume =
      primal_degree == 0 ? ring.dual_vertex_volume(primal_index) : ring.dual_edge_volume(primal_index);
  return {primal_index, primal_degree, volume, 1};
}

Chain boundary(const SimplicialRing& ring, const Chain& c) {
  check_degree(c.degree);
  check_size(ring, c.coeffs);
  if (c.degree == 0) return {-1, Eigen::VectorXd(0)};
  const int n = ring.sites();
  Chain out{0, Eigen::VectorXd::Zero(n)};
  for (int j = 0; j < n; ++j) {
    out.coeffs[ring.wrap(j + 1)] += c.coeffs[j];
    out.coeffs[j] -= c.coeffs[j];
  }
  return out;
}

double evaluate(const Cochain& a, const Chain& c) {
  if (a.degree != c.degree) throw DomainError("cochain and chain degrees differ");
  if (a.values.size() != c.coeffs.size()) throw DimensionMismatch("cochain and chain lengths differ");
  return a.values.dot(c.coeffs);
}

Cochain coboundary(const SimplicialRing& ring, const Cochain& a) {
  check_degree(a.degree);
  check_size(ring, a.values);
  if (a.degree == 1) return {2, Eigen::VectorXd(0)};
  const int n = ring.sites();
  Cochain out{1, Eigen::VectorXd(n)};
  for (int j = 0; j < n; ++j) out.values[j] = a.values[ring.wrap(j + 1)] - a.values[j];
  return out;
}

DualCochain dual_coboundary(const SimplicialRing& ring, const DualCochain& b) {
  check_degree(b.degree);
  check_size(ring, b.values);
  if (b.degree == 1) return {2, Eigen::VectorXd(0)};
  const int n = ring.sites();
  DualCochain out{1, Eigen::VectorXd(n)};
  for (int j = 0; j < n; ++j) out.values[j] = b.values[j] - b.values[ring.wrap(j - 1)];
  return out;
}

DualCochain discrete_hodge(const SimplicialRing& ring, const Cochain& a) {
  check_degree(a.degree);
  check_size(ring, a.values);
  const int n = ring.sites();
  DualCochain out{1 - a.degree, Eigen::VectorXd(n)};
  for (int j = 0; j < n; ++j)
    out.values[j] = a.degree == 0
                        ? a.values[j] * ring.dual_vertex_volume(j) / ring.vertex_volume(j)
                        : a.values[j] * ring.dual_edge_volume(j) / ring.edge_volume(j);
  return out;
}

Cochain discrete_hodge(const SimplicialRing& ring, const DualCochain& a) {
  check_degree(a.degree);
  check_size(ring, a.values);
  const int n = ring.sites();
  Cochain out{1 - a.degree, Eigen::VectorXd(n)};
  for (int j = 0; j < n; ++j)
    out.values[j] = a.degree == 1
                        ? a.values[j] * ring.vertex_volume(j) / ring.dual_vertex_volume(j)
                        : a.values[j] * ring.edge_volume(j) / ring.dual_edge_volume(j);
  return out;
}

Cochain discrete_wedge(const SimplicialRing& ring, const Cochain& a, const Cochain& b) {
  check_degree(a.degree);
  check_degree(b.degree);
  check_size(ring, a.values);
  check_size(ring, b.values);
  if (a.degree + b.degree > 1) throw DomainError("wedge degree exceeds the complex dimension");
  if (a.degree == 0 && b.degree == 0) return {0, a.values.cwiseProduct(b.values)};
  const Cochain& zero = a.degree == 0 ? a : b;
  const Cochain& one = a.degree == 0 ? b : a;
  const int n = ring.sites();
  Cochain out{1, Eigen::VectorXd(n)};
  for (int j = 0; j < n; ++j)
    out.values[j] = 0.5 * (zero.values[j] + zero.values[ring.wrap(j + 1)]) * one.values[j];
  return out;
}

Cochain discrete_codifferential(const SimplicialRing& ring, const Cochain& b) {
  check_degree(b.degree);
  check_size(ring, b.values);
  if (b.degree == 0) return Cochain::zeros(0, ring.sites());
  const Cochain image = discrete_hodge(ring, dual_coboundary(ring, discrete_hodge(ring, b)));
  return {0, -image.values};
}

double metric_inner(const SimplicialRing& ring, const Cochain& a, const Cochain& b) {
  check_degree(a.degree);
  if (a.degree != b.degree) throw DomainError("inner product of different degrees");
  check_size(ring, a.values);
  check_size(ring, b.values);
  const Eigen::VectorXd w = metric_weights(ring).segment(a.degree * ring.sites(), ring.sites());
  return (a.values.cwiseProduct(b.values)).dot(w);
}

Eigen::MatrixXd coboundary_matrix(const SimplicialRing& ring) {
  const int n = ring.sites();
  Eigen::MatrixXd d = Eigen::MatrixXd::Zero(n, n);
  for (int j = 0; j < n; ++j) {
    d(j, ring.wrap(j + 1)) += 1.0;
    d(j, j) -= 1.0;
  }
  return d;
}

Eigen::MatrixXd codifferential_matrix(const SimplicialRing& ring) {
  const int n = ring.sites();
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
  for (int j = 0; j < n; ++j) {
    const double dual = ring.dual_vertex_volume(j);
    m(j, ring.wrap(j - 1)) += 1.0 / (ring.edge_length(j - 1) * dual);
    m(j, j) -= 1.0 / (ring.edge_length(j) * dual);
  }
  return m;
}

Eigen::MatrixXd laplacian_matrix(const SimplicialRing& ring) {
  const int n = ring.sites();
  const Eigen::MatrixXd d = coboundary_matrix(ring);
  const Eigen::MatrixXd delta = codifferential_matrix(ring);
  Eigen::MatrixXd lap = Eigen::MatrixXd::Zero(2 * n, 2 * n);
  lap.topLeftCorner(n, n) = delta * d;
  lap.bottomRightCorner(n, n) = d * delta;
  return lap;
}

Eigen::VectorXd metric_weights(const SimplicialRing& ring) {
  const int n = ring.sites();
  Eigen::VectorXd w(2 * n);
  for (int j = 0; j < n; ++j) {
    w[j] = ring.dual_vertex_volume(j) / ring.vertex_volume(j);
    w[n + j] = ring.dual_edge_volume(j) / ring.edge_volume(j);
  }
  return w;
}

Eigen::MatrixXcd dirac_kahler_matrix(const SimplicialRing& ring) {
  const int n = ring.sites();
  const std::complex<double> i(0.0, 1.0);
  Eigen::MatrixXcd a = Eigen::MatrixXcd::Zero(2 * n, 2 * n);
  a.bottomLeftCorner(n, n) = i * coboundary_matrix(ring).cast<std::complex<double>>();
  a.topRightCorner(n, n) = -i * codifferential_matrix(ring).cast<std::complex<double>>();
  return a;
}

Eigen::MatrixXd dirac_matrix(const SimplicialRing& ring) {
  const int n = ring.sites();
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(2 * n, 2 * n);
  a.bottomLeftCorner(n, n) = coboundary_matrix(ring);
  a.topRightCorner(n, n) = codifferential_matrix(ring);
  return a;
}

Eigen::MatrixXcd dirac_kahler_symmetric(const SimplicialRing& ring) {
  const Eigen::VectorXd s = metric_weights(ring).cwiseSqrt();
  const Eigen::VectorXcd left = s.cast<std::complex<double>>();
  const Eigen::VectorXcd right = s.cwiseInverse().cast<std::complex<double>>();
  Eigen::MatrixXcd m = left.asDiagonal() * dirac_kahler_matrix(ring) * right.asDiagonal();
  // Exact Hermitian part; the two triangles agree up to rounding.
  return 0.5 * (m + m.adjoint());
}

std::vector<double> analytic_dispersion(int sites, double spacing) {
  std::vector<double> out;
  out.reserve(2 * static_cast<std::size_t>(sites));
  for (int m = 0; m < sites; ++m) {
    const double lam = 2.0 / spacing * std::abs(std::sin(std::numbers::pi * m / sites));
    out.push_back(lam);
    out.push_back(-lam);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<double> dk_eigenvalues(const SimplicialRing& ring) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(dirac_kahler_symmetric(ring), Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) throw DomainError("eigensolver failed");
  std::vector<double> out(es.eigenvalues().data(), es.eigenvalues().data() + es.eigenvalues().size());
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<SpectrumEntry> dk_spectrum(const SimplicialRing& ring) {
  const std::vector<double> numeric = dk_eigenvalues(ring);
  const int n = ring.sites();
  std::vector<SpectrumEntry> out;
  out.reserve(numeric.size());
  const double nan = std::numeric_limits<double>::quiet_NaN();
  if (!ring.uniform()) {
    for (std::size_t r = 0; r < numeric.size(); ++r)
      out.push_back({static_cast<int>(r), nan, numeric[r], nan, nan});
    return out;
  }
  const double l = ring.edge_length(0);
  std::vector<std::tuple<double, int>> analytic;
  for (int m = 0; m < n; ++m) {
    const double lam = 2.0 / l * std::abs(std::sin(std::numbers::pi * m / n));
    analytic.emplace_back(lam == 0.0 ? 0.0 : -lam, m);
    analytic.emplace_back(lam, m);
  }
  std::sort(analytic.begin(), analytic.end());
  for (std::size_t r = 0; r < numeric.size(); ++r) {
    const auto [value, m] = analytic[r];
    const double k = 2.0 * std::numbers::pi * m / (n * l);
    out.push_back({m, k, numeric[r], value, std::abs(numeric[r] - value)});
  }
  return out;
}

HodgeParts hodge_decompose(const SimplicialRing& ring, const Cochain& a) {
  check_degree(a.degree);
  check_size(ring, a.values);
  const int n = ring.sites();
  HodgeParts out{Cochain::zeros(a.degree, n), Cochain::zeros(a.degree, n), Cochain::zeros(a.degree, n)};
  if (a.degree == 0) {
    // Image of d is empty in degree 0; the kernel of the Laplacian is the constants.
    const Eigen::VectorXd w = metric_weights(ring).head(n);
    const double mean = a.values.dot(w) / w.sum();
    out.harmonic.values.setConstant(mean);
    out.coexact.values = a.values - out.harmonic.values;
    return out;
  }
  // Harmonic 1-cochains are multiples of the edge lengths; the remainder sums
  // to zero and so lies in the image of d.
  Eigen::VectorXd lengths(n);
  for (int j = 0; j < n; ++j) lengths[j] = ring.edge_length(j);
  const double c = a.values.sum() / lengths.sum();
  out.harmonic.values = c * lengths;
  out.exact.values = a.values - out.harmonic.values;
  return out;
}

}  // namespace stratafold::dec
