#pragma once

#include <Eigen/Dense>
#include <functional>
#include <vector>

#include "eyield/density.hpp"
#include "eyield/liouvillian.hpp"

namespace eyield {

/// Cap on the integration horizon (20 ns). Runs normally end earlier through
/// the excited-population termination test.
inline constexpr double kHorizonCap = 20000.0;

struct EvolveOptions {
  double horizon = kHorizonCap;  // ps
  double rtol = 1e-9;
  double atol = 1e-12;
  double max_step = 0.005;  // ps; sample spacing and upper bound on the RK step
  /// Stop at the first sample whose excited population falls below this.
  /// Zero disables early termination.
  double termination_population = 1e-9;
  bool check_states = true;
  StateTolerances tolerances{};
};

struct SolverStats {
  long steps = 0;
  long rejected = 0;
  long rhs_evaluations = 0;
  long samples = 0;
  double rtol = 0.0;
  double atol = 0.0;
  double sample_step = 0.0;  // ps
  double final_time = 0.0;   // ps
  double terminal_excited_population = 0.0;
  bool early_terminated = false;
  bool loss_active = false;
  bool excited_monotone = true;  // only meaningful when loss_active
  Eigen::Index reduced_dimension = 0;
};

struct Trajectory {
  std::vector<double> times;  // ps, uniform spacing stats.sample_step
  std::vector<DensityMatrix> states;
  double max_step = 0.0;
  SolverStats stats;
};

/// Uniform sample spacing: horizon split into ceil(horizon / max_step) intervals.
double sample_step(const EvolveOptions& options);

/// Called at every sample. Samples are uniformly spaced from t = 0.
using SampleObserver = std::function<void(double time, const DensityMatrix& state)>;

/// Integrates rho' = L rho with adaptive Dormand-Prince 5(4) and hands dense
/// output samples to `observer` without storing them. The integration runs in
/// real Hermitian coordinates on the subspace reachable from rho0.
/// Throws IntegrationError on step underflow and StateInvariantError when a
/// sample violates the density-matrix invariants.
SolverStats propagate(const DensityMatrix& rho0, const Liouvillian& liouvillian, const EvolveOptions& options,
                      const SampleObserver& observer);

/// propagate() collecting every sample.
Trajectory evolve(const DensityMatrix& rho0, const Liouvillian& liouvillian, const EvolveOptions& options = {});

/// Integral of the excited block over [0, inf) in ps, from the linear system
/// L_exc vec(X) = -vec(rho0_exc). Throws SingularSystemError without a decay path.
Eigen::MatrixXcd integrated_state(const Liouvillian& liouvillian, const DensityMatrix& rho0);

/// Real matrix of a Hermiticity-preserving superoperator in the coordinates
/// p[i + d*j] = rho_ii (i == j), Re rho_ij (i < j), Im rho_ji (i > j).
/// Throws DomainError if L does not map Hermitian matrices to Hermitian ones.
Eigen::MatrixXd hermitian_coordinates_matrix(const Liouvillian& liouvillian);
Eigen::VectorXd to_hermitian_coordinates(const Eigen::MatrixXcd& rho);
Eigen::MatrixXcd from_hermitian_coordinates(const Eigen::VectorXd& p, Eigen::Index dim);

}  // namespace eyield
