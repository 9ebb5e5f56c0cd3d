#include "stratafold/parallel.hpp"

#include <omp.h>

#include <cstdlib>
#include <exception>
#include <string>

namespace stratafold::parallel {

namespace {

template <class F>
void for_each_index(int count, Execution exec, F&& body) {
  if (exec == Execution::serial) {
    for (int i = 0; i < count; ++i) body(i);
    return;
  }
  std::vector<std::exception_ptr> errors(count);
#pragma omp parallel for schedule(dynamic) num_threads(worker_count())
  for (int i = 0; i < count; ++i) {
    try {
      body(i);
    } catch (...) {
      errors[i] = std::current_exception();
    }
  }
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);
}

}  // namespace

int worker_count() {
  int n = omp_get_max_threads();
  if (const char* env = std::getenv("STRATAFOLD_THREADS")) {
    char* end = nullptr;
    const long cap = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && cap > 0 && cap < n) n = static_cast<int>(cap);
  }
  return std::max(1, n);
}

std::vector<std::vector<dec::SpectrumEntry>> dk_spectrum_batch(std::span<const dec::SimplicialRing> rings,
                                                               Execution exec) {
  std::vector<std::vector<dec::SpectrumEntry>> out(rings.size());
  for_each_index(static_cast<int>(rings.size()), exec, [&](int i) { out[i] = dec::dk_spectrum(rings[i]); });
  return out;
}

std::vector<double> generator_residuals(std::span<const qgeom::LindbladSpec> specs,
                                        std::span<const qgeom::DensityState> states, Execution exec) {
  if (specs.size() != states.size()) throw DimensionMismatch("generator_residuals: batch sizes differ");
  std::vector<double> out(specs.size());
  for_each_index(static_cast<int>(specs.size()), exec, [&](int i) {
    const Eigen::VectorXd field = qgeom::kl_vector_field(specs[i], states[i]).coords();
    const Eigen::VectorXd gen = qgeom::DualElement(qgeom::lindblad_generator(specs[i], states[i])).coords();
    out[i] = (field - gen).cwiseAbs().maxCoeff();
  });
  return out;
}

std::vector<std::vector<qgeom::Sample>> integrate_batch(const qgeom::LindbladSpec& spec,
                                                        std::span<const qgeom::DensityState> initial,
                                                        const qgeom::IntegrateOptions& opt, Execution exec) {
  std::vector<std::vector<qgeom::Sample>> out(initial.size());
  for_each_index(static_cast<int>(initial.size()), exec,
                 [&](int i) { out[i] = qgeom::integrate(spec, initial[i], opt); });
  return out;
}

Eigen::MatrixXd liouvillian_matrix(const qgeom::LindbladSpec& spec, Execution exec) {
  const qgeom::ObservableBasis& basis = qgeom::ObservableBasis::standard(spec.dim());
  const int size = basis.size();
  Eigen::MatrixXd m(size, size);
  for_each_index(size, exec, [&](int nu) {
    const qgeom::Matrix image = qgeom::lindblad_generator(spec, basis.element(nu) / basis.normalization(nu));
    m.col(nu) = basis.coordinates(qgeom::hermitian_part(image).matrix());
  });
  return m;
}

}  // namespace stratafold::parallel
