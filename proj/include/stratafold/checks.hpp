#pragma once

// Randomized invariant suites reporting the worst residual per identity.

#include <cstdint>
#include <string>
#include <vector>

#include "stratafold/exterior.hpp"
#include "stratafold/rng.hpp"

namespace stratafold::checks {

struct CheckResult {
  std::string suite;
  std::string name;
  double value = 0.0;      // worst residual, or the witness magnitude
  double threshold = 0.0;
  bool at_least = false;   // witnesses must reach the threshold instead
  int cases = 0;

  bool passed() const { return at_least ? value >= threshold : value <= threshold; }
};

// Chain-complex identities for one algebra: boundary and differential
// square to zero, the Cartan formula on 1-forms against the coadjoint
// action, [L_v, i_u] = i_[v,u], [L_u, L_v] = L_[u,v] on forms and
// multivectors, <da|b> = -<a|db>, and the Schouten bracket on vectors.
std::vector<CheckResult> exterior_suite(const exterior::LieAlgebra& alg, const std::string& name, Rng& rng,
                                        int cases);

// Clifford relation, associativity and the contraction derivation rule in
// dims 2-4 for Euclidean and Lorentzian metrics, plus the stored witness that
// the so(3) differential does not derive the vee product.
std::vector<CheckResult> clifford_suite(Rng& rng, int cases);

// Lie-Jordan axioms for n x n Hermitian matrices (lambda^2 = 1).
std::vector<CheckResult> lie_jordan_suite(int n, Rng& rng, int cases);

// Pauli bracket table, the qubit Lie-Jordan axioms, the phase-damping field
// and the Lindblad generator oracle at n = 2.
std::vector<CheckResult> pauli_suite(Rng& rng, int cases);

// so(3), Heisenberg, abelian(3), Clifford and Pauli suites.
std::vector<CheckResult> default_suites(std::uint64_t seed, int cases);

}  // namespace stratafold::checks
