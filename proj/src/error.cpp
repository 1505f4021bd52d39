#include "eyield/error.hpp"

#include <sstream>

namespace eyield {

namespace {

std::string join_violations(const std::vector<std::string>& violations) {
  std::ostringstream os;
  os << "validation failed (" << violations.size() << " violation"
     << (violations.size() == 1 ? "" : "s") << ")";
  for (const auto& v : violations) os << "\n  - " << v;
  return os.str();
}

std::string describe_rates(double omega, double eigenvalue) {
  std::ostringstream os;
  os.precision(12);
  os << "correlated rate matrix at omega = " << omega
     << " ps^-1 has eigenvalue " << eigenvalue
     << " below the clamp tolerance; the spatial correlation model is not positive for this geometry";
  return os.str();
}

}  // namespace

ValidationError::ValidationError(std::vector<std::string> violations)
    : Error(join_violations(violations)), violations_(std::move(violations)) {}

NonPositiveRatesError::NonPositiveRatesError(double omega, double eigenvalue)
    : Error(describe_rates(omega, eigenvalue)), omega_(omega), eigenvalue_(eigenvalue) {}

}  // namespace eyield
