#pragma once

#include <Eigen/Dense>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace eyield {

/// Pigment network in spectroscopic units. Sites are numbered 1..N in the
/// physics and stored 0-based here; state index m (1..N) in the Hamiltonian
/// corresponds to site storage index m - 1, index 0 is the global ground state.
struct SiteNetwork {
  std::vector<double> energies;       // epsilon_m, cm^-1
  Eigen::MatrixXd couplings;          // V_mn, cm^-1, symmetric, zero diagonal
  std::vector<Eigen::Vector3d> positions;     // Angstrom, empty if unknown
  std::optional<Eigen::MatrixXd> distances;   // Angstrom, overrides positions
  std::vector<double> dissipation_rates;      // Gamma_m, ps^-1
  std::vector<double> trap_rates;             // kappa_m, ps^-1
  std::vector<std::string> labels;

  std::size_t n_sites() const { return energies.size(); }
  bool has_geometry() const { return distances.has_value() || !positions.empty(); }
};

/// Checks every invariant and throws ValidationError naming all violations.
/// Returns non-fatal warnings (e.g. no trapping site).
std::vector<std::string> validate(const SiteNetwork& net);

/// Pairwise distances in Angstrom: the explicit matrix if present, otherwise
/// Euclidean distances between positions. Empty optional without geometry.
std::optional<Eigen::MatrixXd> distance_matrix(const SiteNetwork& net);

/// Exciton Hamiltonian on {|0>, |1>, ..., |N>} in angular ps^-1. Row and
/// column 0 are zero.
Eigen::MatrixXcd build_hamiltonian(const SiteNetwork& net);

}  // namespace eyield
