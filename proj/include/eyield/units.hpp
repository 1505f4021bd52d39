#pragma once

namespace eyield::units {

// Spectroscopic units at the file boundary (cm^-1, Angstrom, K, ps^-1);
// angular frequency in ps^-1 everywhere inside the dynamics (hbar = 1).

/// 2*pi*c in ps^-1 per cm^-1.
inline constexpr double kAngularPerWavenumber = 0.1883651567;
/// k_B in cm^-1 per K.
inline constexpr double kBoltzmann = 0.69503476;

constexpr double to_angular(double wavenumber) { return wavenumber * kAngularPerWavenumber; }
constexpr double to_wavenumber(double angular) { return angular / kAngularPerWavenumber; }

/// k_B T in cm^-1.
constexpr double thermal_energy(double temperature_K) { return kBoltzmann * temperature_K; }

}  // namespace eyield::units
