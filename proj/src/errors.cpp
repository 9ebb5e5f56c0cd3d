#include "stratafold/errors.hpp"

#include <sstream>

namespace stratafold {

PositivityViolation::PositivityViolation(double tau, double min_eigenvalue,
                                         double trace_drift)
    : std::runtime_error([&] {
        std::ostringstream os;
        os.precision(17);
        os << "state left the positive cone at tau=" << tau
           << " (min eigenvalue " << min_eigenvalue << ", trace drift "
           << trace_drift << "); reduce the step size";
        return os.str();
      }()),
      tau_(tau),
      min_eigenvalue_(min_eigenvalue),
      trace_drift_(trace_drift) {}

}  // namespace stratafold
