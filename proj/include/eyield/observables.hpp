#pragma once

#include <Eigen/Dense>
#include <array>
#include <functional>
#include <json.hpp>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "eyield/density.hpp"
#include "eyield/liouvillian.hpp"
#include "eyield/network.hpp"
#include "eyield/partition.hpp"
#include "eyield/propagator.hpp"

namespace eyield {

/// omega_RC = sum_m kappa_m rho_mm, in ps^-1.
double trapping_density(const DensityMatrix& rho, const SiteNetwork& net);

/// sum_m Gamma_m rho_mm, in ps^-1.
double dissipation_density(const DensityMatrix& rho, const SiteNetwork& net);

/// 4 |rho_mn|^2 for 1-based sites m != n.
double pair_tangle(const DensityMatrix& rho, int m, int n);

/// Sum of pair tangles over all m < n.
double total_entanglement(const DensityMatrix& rho);

/// Group sums in the order of partition.groups(). The partition is validated
/// against the state's site count.
std::vector<double> partitioned_entanglement(const DensityMatrix& rho, const PairPartition& partition);

struct MonogamyResult {
  double lhs = 0.0;  // sum_{m != n} tau_nm
  double rhs = 0.0;  // one-tangle 4 det(rho_n)
};

/// Requires purity > 1 - 1e-8; throws DomainError otherwise.
MonogamyResult monogamy_check(const DensityMatrix& rho, int site);

/// Composite Simpson integration of several functions sampled on a uniform
/// grid, one sample at a time. An odd number of intervals closes with the 3/8
/// rule over the last three; a single interval falls back to the trapezoid.
class SimpsonAccumulator {
 public:
  SimpsonAccumulator(std::size_t width, double step);

  void add(const std::vector<double>& values);
  std::size_t samples() const { return samples_; }
  std::vector<double> integral() const;

 private:
  std::size_t width_;
  double step_;
  std::size_t samples_ = 0;
  std::vector<double> pair_sum_;
  std::vector<double> last_pair_;
  std::array<std::vector<double>, 4> recent_;  // last four samples, newest at index 3
};

/// Consumes trajectory samples and integrates omega_RC, the dissipation flux
/// and E(t) omega_RC for E_T and each partition group.
class YieldAccumulator {
 public:
  YieldAccumulator(const SiteNetwork& net, std::optional<PairPartition> partition, double step);

  void observe(double time, const DensityMatrix& rho);
  SampleObserver observer();

  double quantum_yield() const;
  double dissipated() const;
  double entanglement_integral_total() const;
  std::vector<double> entanglement_integral_groups() const;
  double terminal_excited_population() const { return terminal_excited_; }
  std::size_t samples() const { return acc_.samples(); }

 private:
  const SiteNetwork* net_;
  std::optional<PairPartition> partition_;
  SimpsonAccumulator acc_;
  std::vector<double> buffer_;
  double terminal_excited_ = 1.0;
};

inline constexpr double kTruncationWarning = 1e-3;
inline constexpr double kMinimumYieldForAverage = 1e-12;

struct YieldReport {
  double quantum_yield = 0.0;
  double yield_oracle = 0.0;
  double truncation_bound = 0.0;
  double dissipated = 0.0;
  double entanglement_yield_total = 0.0;
  std::vector<std::string> group_labels;
  std::vector<double> entanglement_yield_groups;
  std::vector<std::string> warnings;
  SolverStats stats;
};

/// Simpson quadrature of omega_RC over a stored trajectory.
double quantum_yield(const Trajectory& traj, const SiteNetwork& net);

/// Excited population at the last sample, an upper bound on the yield missed
/// by truncating the time integral.
double truncation_bound(const Trajectory& traj);

/// sum_m kappa_m rhobar_mm from the integrated state.
double quantum_yield_exact(const Liouvillian& liouvillian, const DensityMatrix& rho0, const SiteNetwork& net);

using EntanglementFunctional = std::function<double(const DensityMatrix&)>;

/// (1/eta) int E(t) omega_RC(t) dt with eta on the same grid. Throws DomainError
/// when eta < 1e-12.
double entanglement_yield(const Trajectory& traj, const SiteNetwork& net, const EntanglementFunctional& functional);

/// Functional selecting one partition group.
EntanglementFunctional group_functional(const PairPartition& partition, const std::string& label);

/// Propagates rho0 once and fills every field of the report.
YieldReport compute_yield_report(const SiteNetwork& net, const Liouvillian& liouvillian, const DensityMatrix& rho0,
                                 const PairPartition& partition, const EvolveOptions& options = {});

nlohmann::json yield_report_to_json(const YieldReport& report);
nlohmann::json solver_stats_to_json(const SolverStats& stats);

/// Writes "time_ps,E_T,E_<label>...,omega_RC" rows as samples arrive.
class ObservableTableWriter {
 public:
  ObservableTableWriter(std::ostream& out, const SiteNetwork& net, const PairPartition& partition);
  void observe(double time, const DensityMatrix& rho);

 private:
  std::ostream* out_;
  const SiteNetwork* net_;
  PairPartition partition_;
};

/// Writes "time_ps,p0..pN,|a_ij| for i<j" rows as samples arrive.
class TrajectoryTableWriter {
 public:
  TrajectoryTableWriter(std::ostream& out, Eigen::Index n_sites);
  void observe(double time, const DensityMatrix& rho);

 private:
  std::ostream* out_;
  Eigen::Index n_sites_;
};

/// Fixed 12-significant-digit formatting used in every CSV.
std::string format_number(double value);

}  // namespace eyield
