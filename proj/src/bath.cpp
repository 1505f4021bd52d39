#include "eyield/bath.hpp"

#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "eyield/bessel.hpp"
#include "eyield/error.hpp"
#include "eyield/units.hpp"

namespace eyield {

std::string_view to_string(BathModel model) {
  switch (model) {
    case BathModel::SecularWeakCoupling: return "secular";
    case BathModel::PureDephasing: return "dephasing";
  }
  return "unknown";
}

BathModel bath_model_from_string(std::string_view name) {
  if (name == "secular" || name == "SecularWeakCoupling") return BathModel::SecularWeakCoupling;
  if (name == "dephasing" || name == "PureDephasing") return BathModel::PureDephasing;
  throw ParseError("unknown bath model '" + std::string(name) +
                   "' (expected 'secular' or 'dephasing')");
}

void validate(const BathSpec& bath) {
  std::vector<std::string> bad;
  if (!(bath.reorg_energy >= 0.0)) bad.push_back("reorg_energy_cm1 must be >= 0");
  if (!(bath.cutoff_freq > 0.0)) bad.push_back("cutoff_cm1 must be > 0");
  if (!(bath.temperature > 0.0)) bad.push_back("temperature_K must be > 0");
  if (!(bath.correlation_length >= 0.0)) bad.push_back("correlation_length_angstrom must be >= 0");
  if (!(bath.dephasing_rate >= 0.0)) bad.push_back("dephasing_rate_per_ps must be >= 0");
  if (!bad.empty()) throw ValidationError(std::move(bad));
}

double spectral_density(double omega_cm, const BathSpec& bath) {
  if (omega_cm < 0.0) throw DomainError("spectral_density: negative frequency");
  const double x = omega_cm / bath.cutoff_freq;
  return bath.reorg_energy * x * std::exp(-x);
}

double thermal_occupation(double omega, double temperature) {
  if (omega == 0.0) throw DomainError("thermal_occupation: zero frequency");
  if (!(temperature > 0.0)) throw DomainError("thermal_occupation: temperature must be > 0");
  const double x = units::to_wavenumber(std::fabs(omega)) / units::thermal_energy(temperature);
  const double n = 1.0 / std::expm1(x);
  return omega > 0.0 ? n : -(n + 1.0);
}

double bath_rate(double omega, const BathSpec& bath) {
  constexpr double two_pi = 2.0 * std::numbers::pi;
  if (bath.reorg_energy == 0.0) return 0.0;
  if (omega == 0.0) {
    const double limit = two_pi * bath.reorg_energy * units::thermal_energy(bath.temperature) /
                         bath.cutoff_freq;
    return units::to_angular(limit);
  }
  const double w = units::to_wavenumber(std::fabs(omega));
  const double x = w / units::thermal_energy(bath.temperature);
  const double j = spectral_density(w, bath);
  const double em1 = std::expm1(x);
  // N(|w|) = 1/em1 and N(|w|) + 1 = e^x/em1 share the same denominator, which
  // keeps the detailed-balance ratio exact to rounding.
  const double occupation = omega > 0.0 ? std::exp(x) / em1 : 1.0 / em1;
  return units::to_angular(two_pi * j * occupation);
}

double spatial_correlation(double distance, double correlation_length) {
  if (distance < 0.0 || correlation_length < 0.0)
    throw DomainError("spatial_correlation: negative distance or correlation length");
  if (distance == 0.0) return 1.0;
  if (correlation_length == 0.0) return 0.0;
  return bessel_j0(distance / correlation_length);
}

}  // namespace eyield
