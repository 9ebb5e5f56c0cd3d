#pragma once

// Discrete exterior calculus on a periodic 1-D simplicial complex.
//
// Vertex v_j, edge sigma_j = [v_j, v_{j+1}] (indices mod N), edge length l_j.
// Primal volumes: |v_j| = 1, |sigma_j| = l_j. Circumcentric duals sit at edge
// midpoints, so |*v_j| = (l_{j-1} + l_j) / 2 and |*sigma_j| = 1. Dual cell
// *v_j runs from the midpoint of sigma_{j-1} to that of sigma_j. All
// orientation factors are +1.

#include <Eigen/Dense>

#include <complex>
#include <span>
#include <vector>

#include "stratafold/errors.hpp"

namespace stratafold::dec {

class SimplicialRing {
 public:
  SimplicialRing(int sites, double spacing);
  explicit SimplicialRing(std::vector<double> edge_lengths);

  int sites() const { return static_cast<int>(lengths_.size()); }
  double edge_length(int j) const { return lengths_[wrap(j)]; }
  const std::vector<double>& edge_lengths() const { return lengths_; }
  bool uniform() const { return uniform_; }

  double vertex_volume(int) const { return 1.0; }
  double edge_volume(int j) const { return edge_length(j); }
  double dual_vertex_volume(int j) const {  // |*v_j|
    return 0.5 * (edge_length(j - 1) + edge_length(j));
  }
  double dual_edge_volume(int) const { return 1.0; }  // |*sigma_j|

  int wrap(int j) const {
    const int n = sites();
    return ((j % n) + n) % n;
  }

  friend bool operator==(const SimplicialRing& a, const SimplicialRing& b) {
    return a.lengths_ == b.lengths_;
  }

 private:
  std::vector<double> lengths_;
  bool uniform_ = true;
};

// Integer-valued in the chain complex but carried as reals for linear algebra.
struct Chain {
  int degree = 0;
  Eigen::VectorXd coeffs;
};

struct Cochain {
  int degree = 0;  // 0, 1; degree 2 only as the (empty) image of d
  Eigen::VectorXd values;

  static Cochain zeros(int degree, int sites) {
    return {degree, Eigen::VectorXd::Zero(degree <= 1 ? sites : 0)};
  }
};

// Cochain on the dual complex. Values are indexed by the primal simplex the
// dual cell belongs to: degree 1 lives on *v_j, degree 0 on *sigma_j.
struct DualCochain {
  int degree = 0;
  Eigen::VectorXd values;
};

struct DualCell {
  int primal_index;
  int primal_degree;
  double volume;
  int orientation;
};

DualCell dual_cell(const SimplicialRing& ring, int primal_index, int primal_degree);

// d[v_j, v_{j+1}] = v_{j+1} - v_j. Degree 0 maps to the empty chain.
Chain boundary(const SimplicialRing& ring, const Chain& c);

// <a, c> for a cochain and chain of equal degree.
double evaluate(const Cochain& a, const Chain& c);

// (d a)_j = a_{j+1} - a_j. Degree-1 input gives the empty degree-2 cochain.
Cochain coboundary(const SimplicialRing& ring, const Cochain& a);

// Dual-complex coboundary: (d b)_{*v_j} = b_{*sigma_j} - b_{*sigma_{j-1}}.
DualCochain dual_coboundary(const SimplicialRing& ring, const DualCochain& b);

// Primal k-cochain -> dual (1-k)-cochain using (1/|s|)<a,s> = (1/|*s|)<*a,*s>.
DualCochain discrete_hodge(const SimplicialRing& ring, const Cochain& a);
// Dual -> primal, the inverse volume ratio.
Cochain discrete_hodge(const SimplicialRing& ring, const DualCochain& a);

// Pointwise product for (0,0); midpoint-weighted product for (0,1) and (1,0).
Cochain discrete_wedge(const SimplicialRing& ring, const Cochain& a, const Cochain& b);

// delta = -(*d*) on 1-cochains, which makes <d a, b> = <a, delta b> under the
// metric inner product. Degree-0 input gives zero.
Cochain discrete_codifferential(const SimplicialRing& ring, const Cochain& b);

// sum_j a_j b_j |*s_j| / |s_j|.
double metric_inner(const SimplicialRing& ring, const Cochain& a, const Cochain& b);

// Matrices in coefficient coordinates (0-cochains first, then 1-cochains).
Eigen::MatrixXd coboundary_matrix(const SimplicialRing& ring);       // N x N, 0 -> 1
Eigen::MatrixXd codifferential_matrix(const SimplicialRing& ring);   // N x N, 1 -> 0
Eigen::MatrixXd laplacian_matrix(const SimplicialRing& ring);        // 2N x 2N, d delta + delta d
// Diagonal of the metric inner product on Omega^0 + Omega^1.
Eigen::VectorXd metric_weights(const SimplicialRing& ring);

// i(d - delta) acting on Omega^0 + Omega^1.
Eigen::MatrixXcd dirac_kahler_matrix(const SimplicialRing& ring);

// d + delta on Omega^0 + Omega^1. Conjugating by diag(1, i) maps it to
// -i(d - delta), so both operators share one (symmetric) spectrum.
Eigen::MatrixXd dirac_matrix(const SimplicialRing& ring);

// W^{1/2} A W^{-1/2} for the metric weights W: Hermitian for every spacing
// and similar to dirac_kahler_matrix.
Eigen::MatrixXcd dirac_kahler_symmetric(const SimplicialRing& ring);

struct SpectrumEntry {
  int m;             // plane-wave index (the sorted eigenvalue rank on non-uniform rings)
  double k;          // 2 pi m / (N l); NaN on non-uniform rings
  double numeric;
  double analytic;   // NaN on non-uniform rings
  double abs_error;  // NaN on non-uniform rings
};

// (2/l) |sin(k l / 2)| with k = 2 pi m / (N l), on both branches.
std::vector<double> analytic_dispersion(int sites, double spacing);

// Sorted numeric eigenvalues of i(d - delta).
std::vector<double> dk_eigenvalues(const SimplicialRing& ring);

// Numeric eigenvalues paired in sorted order with the analytic multiset.
std::vector<SpectrumEntry> dk_spectrum(const SimplicialRing& ring);

struct HodgeParts {
  Cochain exact;
  Cochain coexact;
  Cochain harmonic;
};

// a = exact + coexact + harmonic, orthogonal under metric_inner.
HodgeParts hodge_decompose(const SimplicialRing& ring, const Cochain& a);

}  // namespace stratafold::dec
