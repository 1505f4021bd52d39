#pragma once

#include <Eigen/Dense>
#include <complex>
#include <string>

namespace eyield {

struct StateTolerances {
  double hermiticity = 1e-10;
  double trace = 1e-8;
  double positivity = 1e-8;  // smallest eigenvalue must exceed -positivity
};

struct StateCheck {
  double hermiticity_error = 0.0;
  double trace_error = 0.0;
  bool positive = true;
  double min_eigenvalue = 0.0;  // only computed when the positivity test fails

  bool ok(const StateTolerances& tol) const {
    return hermiticity_error <= tol.hermiticity && trace_error <= tol.trace && positive;
  }
  std::string describe() const;
};

/// Density matrix on {|0>, |1>, ..., |N>}: index 0 is the global ground state,
/// index m the excitation localized on site m.
class DensityMatrix {
 public:
  DensityMatrix() = default;
  explicit DensityMatrix(Eigen::MatrixXcd matrix);

  const Eigen::MatrixXcd& matrix() const { return matrix_; }
  Eigen::Index dimension() const { return matrix_.rows(); }
  Eigen::Index n_sites() const { return matrix_.rows() - 1; }

  std::complex<double> operator()(Eigen::Index i, Eigen::Index j) const { return matrix_(i, j); }

  double population(Eigen::Index index) const { return matrix_(index, index).real(); }
  double excited_population() const;
  double trace() const;
  double purity() const;

  StateCheck check(const StateTolerances& tol = {}) const;

 private:
  Eigen::MatrixXcd matrix_;
};

/// |m><m| for 1 <= site <= n_sites. Throws DomainError otherwise.
DensityMatrix localized_state(int site, int n_sites);

/// Gibbs state of a Hermitian block at temperature T (K), block energies in
/// angular ps^-1, embedded at indices 1..N of an (N+1)-dim matrix.
DensityMatrix single_excitation_gibbs_state(const Eigen::MatrixXcd& hamiltonian, double temperature);

/// Trace distance (1/2)||a - b||_1.
double trace_distance(const DensityMatrix& a, const DensityMatrix& b);

}  // namespace eyield
