#pragma once

#include <stdexcept>
#include <string>

namespace stratafold {

// Operands built over different carriers (dimension or parent structure).
struct DimensionMismatch : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Structure constants, metrics, operator lists or files that fail validation.
struct InvalidSpec : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Evaluation outside the domain of a function (e.g. f_I(xi) = 0 for
// expectation values).
struct DomainError : std::domain_error {
  using std::domain_error::domain_error;
};

// Hodge star / codifferential requested for a degenerate metric.
struct DegenerateMetric : std::domain_error {
  using std::domain_error::domain_error;
};

// Query on a face of the probability simplex where the metric blows up.
struct BoundaryError : std::domain_error {
  using std::domain_error::domain_error;
};

// Raised by the integrator when a sample leaves the state space beyond
// tolerance. Signals a step-size problem, not physics.
class PositivityViolation : public std::runtime_error {
 public:
  PositivityViolation(double tau, double min_eigenvalue, double trace_drift);

  double tau() const { return tau_; }
  double min_eigenvalue() const { return min_eigenvalue_; }
  double trace_drift() const { return trace_drift_; }

 private:
  double tau_;
  double min_eigenvalue_;
  double trace_drift_;
};

}  // namespace stratafold
