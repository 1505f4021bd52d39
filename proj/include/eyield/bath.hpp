#pragma once

#include <string_view>

namespace eyield {

enum class BathModel { SecularWeakCoupling, PureDephasing };

std::string_view to_string(BathModel model);
BathModel bath_model_from_string(std::string_view name);

/// Environment parameters in spectroscopic units.
struct BathSpec {
  double reorg_energy = 0.0;        // E_r, cm^-1
  double cutoff_freq = 150.0;       // omega_c, cm^-1
  double temperature = 293.0;       // K
  double correlation_length = 0.0;  // lambda_B, Angstrom; 0 = uncorrelated
  BathModel model = BathModel::SecularWeakCoupling;
  double dephasing_rate = 0.0;      // ps^-1, PureDephasing only
};

/// Throws ValidationError listing every violated field constraint.
void validate(const BathSpec& bath);

/// Ohmic spectral density J(w) = E_r (w / w_c) exp(-w / w_c), w and result
/// in cm^-1. Throws DomainError for w < 0.
double spectral_density(double omega_cm, const BathSpec& bath);

/// Bose occupation 1 / (exp(w / k_B T) - 1) for angular w in ps^-1.
/// Negative w obeys N(w) = -(N(|w|) + 1). Throws DomainError for w == 0.
double thermal_occupation(double omega, double temperature);

/// Single-site transition rate (ps^-1) for a jump that releases energy w
/// (angular ps^-1): 2 pi J(|w|) (N(w) + 1) for w > 0, 2 pi J(|w|) N(|w|)
/// for w < 0, and the ohmic limit 2 pi E_r k_B T / w_c at w = 0.
double bath_rate(double omega, const BathSpec& bath);

/// Spatial correlation J0(d / lambda_B) with J0(0) = 1 and the uncorrelated
/// convention lambda_B = 0 -> 0 for d > 0.
double spatial_correlation(double distance, double correlation_length);

}  // namespace eyield
