#pragma once

// Batched kernels over independent work items. Each item writes only its
// own output slot, so serial and parallel runs return identical results in
// input order. An exception from any item is rethrown after the batch, the
// lowest failing index first.

#include <span>
#include <vector>

#include "stratafold/dec.hpp"
#include "stratafold/qgeom.hpp"

namespace stratafold::parallel {

enum class Execution { serial, parallel };

// omp_get_max_threads(), capped by a positive integer in STRATAFOLD_THREADS.
int worker_count();

std::vector<std::vector<dec::SpectrumEntry>> dk_spectrum_batch(std::span<const dec::SimplicialRing> rings,
                                                               Execution exec = Execution::parallel);

// ||kl_vector_field(spec_i, rho_i) - coords(L_i(rho_i))||_inf per pair.
std::vector<double> generator_residuals(std::span<const qgeom::LindbladSpec> specs,
                                        std::span<const qgeom::DensityState> states,
                                        Execution exec = Execution::parallel);

std::vector<std::vector<qgeom::Sample>> integrate_batch(const qgeom::LindbladSpec& spec,
                                                        std::span<const qgeom::DensityState> initial,
                                                        const qgeom::IntegrateOptions& opt,
                                                        Execution exec = Execution::parallel);

// Column-parallel assembly; equal to qgeom::liouvillian_matrix.
Eigen::MatrixXd liouvillian_matrix(const qgeom::LindbladSpec& spec, Execution exec = Execution::parallel);

}  // namespace stratafold::parallel
