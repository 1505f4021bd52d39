#include "eyield/density.hpp"

#include <cmath>
#include <sstream>

#include "eyield/error.hpp"
#include "eyield/units.hpp"

namespace eyield {

std::string StateCheck::describe() const {
  std::ostringstream os;
  os.precision(6);
  os << "hermiticity error " << hermiticity_error << ", trace error " << trace_error;
  if (!positive) os << ", minimum eigenvalue " << min_eigenvalue;
  return os.str();
}

DensityMatrix::DensityMatrix(Eigen::MatrixXcd matrix) : matrix_(std::move(matrix)) {
  if (matrix_.rows() != matrix_.cols() || matrix_.rows() < 2)
    throw DomainError("DensityMatrix: need a square matrix of dimension >= 2");
}

double DensityMatrix::excited_population() const {
  double p = 0.0;
  for (Eigen::Index i = 1; i < matrix_.rows(); ++i) p += matrix_(i, i).real();
  return p;
}

double DensityMatrix::trace() const { return matrix_.trace().real(); }

double DensityMatrix::purity() const { return (matrix_ * matrix_).trace().real(); }

StateCheck DensityMatrix::check(const StateTolerances& tol) const {
  StateCheck c;
  c.hermiticity_error = (matrix_ - matrix_.adjoint()).cwiseAbs().maxCoeff();
  c.trace_error = std::abs(matrix_.trace() - 1.0);
  // rho + tol * I is positive definite iff every eigenvalue exceeds -tol.
  const Eigen::MatrixXcd hermitian = 0.5 * (matrix_ + matrix_.adjoint());
  const Eigen::MatrixXcd shifted =
      hermitian + tol.positivity * Eigen::MatrixXcd::Identity(matrix_.rows(), matrix_.cols());
  Eigen::LLT<Eigen::MatrixXcd> llt(shifted);
  c.positive = llt.info() == Eigen::Success;
  if (!c.positive) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(hermitian, Eigen::EigenvaluesOnly);
    c.min_eigenvalue = solver.eigenvalues()(0);
  }
  return c;
}

DensityMatrix localized_state(int site, int n_sites) {
  if (n_sites < 1 || site < 1 || site > n_sites)
    throw DomainError("localized_state: site " + std::to_string(site) + " outside 1.." + std::to_string(n_sites));
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(n_sites + 1, n_sites + 1);
  m(site, site) = 1.0;
  return DensityMatrix(std::move(m));
}

DensityMatrix single_excitation_gibbs_state(const Eigen::MatrixXcd& hamiltonian, double temperature) {
  const auto n = hamiltonian.rows() - 1;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(hamiltonian.bottomRightCorner(n, n));
  const Eigen::VectorXd e = solver.eigenvalues();
  const double beta = 1.0 / units::to_angular(units::thermal_energy(temperature));
  Eigen::VectorXd w = (-(e.array() - e.minCoeff()) * beta).exp();
  w /= w.sum();
  Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(n + 1, n + 1);
  rho.bottomRightCorner(n, n) = solver.eigenvectors() * w.cast<std::complex<double>>().asDiagonal() *
                                solver.eigenvectors().adjoint();
  return DensityMatrix(std::move(rho));
}

double trace_distance(const DensityMatrix& a, const DensityMatrix& b) {
  const Eigen::MatrixXcd diff = a.matrix() - b.matrix();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(0.5 * (diff + diff.adjoint()), Eigen::EigenvaluesOnly);
  return 0.5 * solver.eigenvalues().cwiseAbs().sum();
}

}  // namespace eyield
