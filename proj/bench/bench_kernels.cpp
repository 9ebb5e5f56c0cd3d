#include <benchmark/benchmark.h>

#include "stratafold/parallel.hpp"

namespace {

using stratafold::parallel::Execution;
namespace dec = stratafold::dec;
namespace q = stratafold::qgeom;

std::vector<dec::SimplicialRing> sweep(int max_sites) {
  std::vector<dec::SimplicialRing> rings;
  for (int n = 3; n <= max_sites; ++n)
    for (double l : {0.5, 1.0, 2.0}) rings.emplace_back(n, l);
  return rings;
}

q::LindbladSpec spec(int n) {
  q::Matrix h = q::Matrix::Zero(n, n);
  std::vector<q::Matrix> v;
  for (int j = 0; j + 1 < n; ++j) {
    h(j, j + 1) = h(j + 1, j) = 0.5;
    q::Matrix lower = q::Matrix::Zero(n, n);
    lower(j, j + 1) = 0.3;
    v.push_back(lower);
  }
  return q::LindbladSpec(q::HermitianOperator(h), std::move(v));
}

template <Execution E>
void BM_SpectrumSweep(benchmark::State& state) {
  const auto rings = sweep(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(stratafold::parallel::dk_spectrum_batch(rings, E));
  state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(rings.size()));
}

template <Execution E>
void BM_Liouvillian(benchmark::State& state) {
  const q::LindbladSpec s = spec(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(stratafold::parallel::liouvillian_matrix(s, E));
}

template <Execution E>
void BM_Trajectories(benchmark::State& state) {
  const int n = 3;
  const q::LindbladSpec s = spec(n);
  std::vector<q::DensityState> init;
  for (int k = 0; k < state.range(0); ++k) {
    q::Matrix rho = q::Matrix::Zero(n, n);
    rho(k % n, k % n) = 1.0;
    init.emplace_back(rho);
  }
  q::IntegrateOptions opt;
  opt.t_max = 1.0;
  opt.dt = 1e-3;
  opt.sample_every = 100;
  for (auto _ : state) benchmark::DoNotOptimize(stratafold::parallel::integrate_batch(s, init, opt, E));
}

}  // namespace

BENCHMARK(BM_SpectrumSweep<Execution::serial>)->Arg(32)->Arg(64)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SpectrumSweep<Execution::parallel>)->Arg(32)->Arg(64)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Liouvillian<Execution::serial>)->Arg(4)->Arg(8)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_Liouvillian<Execution::parallel>)->Arg(4)->Arg(8)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_Trajectories<Execution::serial>)->Arg(8)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Trajectories<Execution::parallel>)->Arg(8)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
