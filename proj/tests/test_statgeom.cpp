#include <doctest.h>

#include <algorithm>
#include <numeric>

#include "stratafold/statgeom.hpp"
#include "support/random.hpp"

using namespace stratafold::statgeom;
using stratafold::BoundaryError;
using stratafold::InvalidSpec;
using testsupport::Rng;

namespace {

ProbabilityVector random_interior(Rng& rng, int n, double floor = 0.0) {
  Eigen::VectorXd p(n);
  for (int i = 0; i < n; ++i) p[i] = -std::log(rng.uniform(1e-12, 1.0)) + floor;
  return ProbabilityVector(p / p.sum());
}

Eigen::VectorXd random_tangent(Rng& rng, int n) {
  Eigen::VectorXd u = rng.vector(n);
  u.array() -= u.mean();
  return u;
}

}  // namespace

TEST_CASE("probability vector validation") {
  CHECK_THROWS_AS(ProbabilityVector(Eigen::Vector2d(0.5, 0.6)), InvalidSpec);
  CHECK_THROWS_AS(ProbabilityVector(Eigen::Vector2d(1.5, -0.5)), InvalidSpec);
  CHECK_THROWS_AS(ProbabilityVector(Eigen::VectorXd(0)), InvalidSpec);
  CHECK(ProbabilityVector::uniform(4)[2] == doctest::Approx(0.25));
}

TEST_CASE("fisher metric") {
  const ProbabilityVector p(Eigen::Vector3d(0.25, 0.25, 0.5));
  CHECK(fisher_metric(p, 0, 0) == doctest::Approx(1.0));
  CHECK(fisher_metric(p, 1, 1) == doctest::Approx(1.0));
  CHECK(fisher_metric(p, 2, 2) == doctest::Approx(0.5));
  CHECK(fisher_metric(p, 0, 2) == 0.0);
  for (int n = 2; n <= 8; ++n) {
    const ProbabilityVector u = ProbabilityVector::uniform(n);
    for (int i = 0; i < n; ++i) CHECK(fisher_metric(u, i, i) == doctest::Approx(n / 4.0));
  }
  const ProbabilityVector vertex(Eigen::Vector3d(1, 0, 0));
  CHECK_THROWS_AS(fisher_metric(vertex, 1, 1), BoundaryError);
  CHECK_THROWS_AS(fisher_metric(vertex, 0, 1), BoundaryError);
  CHECK_THROWS_AS(pullback_residual(vertex, Eigen::Vector3d::Zero(), Eigen::Vector3d::Zero()), BoundaryError);
  CHECK_THROWS(fisher_metric(p, 0, 3));

  // Relabeling outcomes permutes the metric components.
  Rng rng(60);
  const ProbabilityVector q = random_interior(rng, 5);
  std::vector<int> perm(5);
  std::iota(perm.begin(), perm.end(), 0);
  std::shuffle(perm.begin(), perm.end(), rng.engine());
  Eigen::VectorXd permuted(5);
  for (int i = 0; i < 5; ++i) permuted[i] = q[perm[i]];
  const ProbabilityVector qp(permuted);
  for (int i = 0; i < 5; ++i)
    for (int j = 0; j < 5; ++j) CHECK(fisher_metric(qp, i, j) == fisher_metric(q, perm[i], perm[j]));
}

TEST_CASE("square root embedding") {
  CHECK((sqrt_embed(ProbabilityVector(Eigen::Vector3d(1, 0, 0))) - Eigen::Vector3d(1, 0, 0)).norm() == 0.0);
  const Eigen::VectorXd x = sqrt_embed(ProbabilityVector::uniform(3));
  for (int i = 0; i < 3; ++i) CHECK(x[i] == doctest::Approx(1.0 / std::sqrt(3.0)));
  Rng rng(61);
  for (int t = 0; t < 200; ++t) {
    const int n = rng.integer(2, 8);
    const ProbabilityVector p = random_interior(rng, n);
    const Eigen::VectorXd e = sqrt_embed(p);
    CHECK(std::abs(e.squaredNorm() - 1.0) <= 1e-12);
    CHECK(e.minCoeff() >= 0.0);
    CHECK((e.cwiseAbs2() - p.values()).cwiseAbs().maxCoeff() < 1e-15);
  }
}

TEST_CASE("pullback residual") {
  Rng rng(62);
  const ProbabilityVector u3 = ProbabilityVector::uniform(3);
  CHECK(pullback_residual(u3, Eigen::Vector3d::Zero(), Eigen::Vector3d::Zero()) == 0.0);
  for (int t = 0; t < 500; ++t) {
    const int n = rng.integer(2, 8);
    const ProbabilityVector p = random_interior(rng, n);
    CHECK(pullback_residual(p, random_tangent(rng, n), random_tangent(rng, n)) <= 1e-10);
  }
  Eigen::VectorXd near(4);
  near << 1e-6, 0.3, 0.3, 0.4 - 1e-6;
  const ProbabilityVector face(near);
  for (int t = 0; t < 20; ++t) CHECK(pullback_residual(face, random_tangent(rng, 4), random_tangent(rng, 4)) <= 1e-8);
  CHECK_THROWS_AS(pullback_residual(u3, Eigen::Vector3d(1, 0, 0), Eigen::Vector3d(1, -1, 0)),
                  stratafold::DomainError);
}
