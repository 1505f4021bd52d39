#pragma once

#include <Eigen/Dense>
#include <vector>

namespace eyield {

/// Transition |from> -> |to> between single-excitation eigenstates, releasing
/// energy eps_from - eps_to.
struct Transition {
  int from = 0;  // Psi'
  int to = 0;    // Psi
};

struct FrequencyBin {
  double omega = 0.0;  // angular ps^-1
  std::vector<Transition> transitions;
};

/// Eigen-decomposition of the N x N single-excitation block.
struct EigenSystem {
  Eigen::VectorXd energies;          // angular ps^-1, ascending
  Eigen::MatrixXcd coefficients;     // (site m, exciton Psi) -> c_m(Psi)
  std::vector<FrequencyBin> bins;    // ascending omega; omega == 0 holds every Psi' == Psi pair

  Eigen::Index size() const { return energies.size(); }
};

/// Transition frequencies closer than this are merged into one bin.
inline constexpr double kFrequencyBinToleranceCm = 1e-6;

/// Diagonalizes the block of `hamiltonian` below the ground row/column.
/// Eigenvectors are normalised so that their first component with modulus
/// above 1e-12 is real and positive.
EigenSystem diagonalize_single_excitation(const Eigen::MatrixXcd& hamiltonian);

}  // namespace eyield
