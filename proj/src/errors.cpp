#include "egvi/errors.hpp"

#include <sstream>

namespace egvi {

namespace {

std::string describe_dimension(const std::string& field, long expected, long actual) {
  std::ostringstream out;
  out << "dimension mismatch in '" << field << "': expected " << expected << ", got " << actual;
  return out.str();
}

std::string with_value(const std::string& what, const char* label, double value) {
  std::ostringstream out;
  out.precision(17);
  out << what << " (" << label << ' ' << value << ')';
  return out.str();
}

}  // namespace

DimensionError::DimensionError(const std::string& field, long expected, long actual)
    : Error(describe_dimension(field, expected, actual)), field_(field) {}

InfeasiblePointError::InfeasiblePointError(const std::string& what, double infeasibility)
    : Error(with_value(what, "infeasibility", infeasibility)), infeasibility_(infeasibility) {}

NonConvergenceError::NonConvergenceError(const std::string& what, double residual,
                                         long iterations)
    : Error(with_value(what + " after " + std::to_string(iterations) + " iterations",
                       "residual", residual)),
      residual_(residual),
      iterations_(iterations) {}

PropertyViolationError::PropertyViolationError(const std::string& property, double slack)
    : Error(with_value("reduced-frame property violated: " + property, "slack", slack)),
      property_(property),
      slack_(slack) {}

}  // namespace egvi
