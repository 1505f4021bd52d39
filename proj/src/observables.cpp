#include "eyield/observables.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "eyield/error.hpp"

namespace eyield {

namespace {

void require_site(const DensityMatrix& rho, int site, const char* what) {
  if (site < 1 || site > rho.n_sites())
    throw DomainError(std::string(what) + ": site " + std::to_string(site) + " outside 1.." +
                      std::to_string(rho.n_sites()));
}

double tangle_unchecked(const DensityMatrix& rho, int m, int n) { return 4.0 * std::norm(rho(m, n)); }

// Assumes the partition was validated for this site count.
void group_sums(const DensityMatrix& rho, const PairPartition& partition, std::vector<double>& out) {
  out.assign(partition.groups().size(), 0.0);
  for (std::size_t g = 0; g < partition.groups().size(); ++g)
    for (const auto& p : partition.groups()[g].pairs) out[g] += tangle_unchecked(rho, p.first, p.second);
}

}  // namespace

double trapping_density(const DensityMatrix& rho, const SiteNetwork& net) {
  if (static_cast<std::size_t>(rho.n_sites()) != net.n_sites())
    throw DomainError("trapping_density: state and network sizes differ");
  double w = 0.0;
  for (std::size_t m = 0; m < net.n_sites(); ++m)
    if (net.trap_rates[m] != 0.0) w += net.trap_rates[m] * rho.population(static_cast<Eigen::Index>(m + 1));
  return w;
}

double dissipation_density(const DensityMatrix& rho, const SiteNetwork& net) {
  if (static_cast<std::size_t>(rho.n_sites()) != net.n_sites())
    throw DomainError("dissipation_density: state and network sizes differ");
  double w = 0.0;
  for (std::size_t m = 0; m < net.n_sites(); ++m)
    if (net.dissipation_rates[m] != 0.0)
      w += net.dissipation_rates[m] * rho.population(static_cast<Eigen::Index>(m + 1));
  return w;
}

double pair_tangle(const DensityMatrix& rho, int m, int n) {
  require_site(rho, m, "pair_tangle");
  require_site(rho, n, "pair_tangle");
  if (m == n) throw DomainError("pair_tangle: sites must differ");
  return tangle_unchecked(rho, m, n);
}

double total_entanglement(const DensityMatrix& rho) {
  const int n = static_cast<int>(rho.n_sites());
  double e = 0.0;
  for (int i = 1; i <= n; ++i)
    for (int j = i + 1; j <= n; ++j) e += tangle_unchecked(rho, i, j);
  return e;
}

std::vector<double> partitioned_entanglement(const DensityMatrix& rho, const PairPartition& partition) {
  partition.validate(static_cast<std::size_t>(rho.n_sites()));
  std::vector<double> out;
  group_sums(rho, partition, out);
  return out;
}

MonogamyResult monogamy_check(const DensityMatrix& rho, int site) {
  require_site(rho, site, "monogamy_check");
  const double purity = rho.purity();
  if (!(purity > 1.0 - 1e-8))
    throw DomainError("monogamy_check: state is not pure (purity " + std::to_string(purity) +
                      "); the mixed-state one-tangle is not implemented");
  MonogamyResult r;
  for (int m = 1; m <= rho.n_sites(); ++m)
    if (m != site) r.lhs += tangle_unchecked(rho, site, m);
  // Reduced state of the site qubit: excited weight p_n, coherence rho_0n.
  const double p = rho.population(site);
  r.rhs = 4.0 * ((1.0 - p) * p - std::norm(rho(0, site)));
  return r;
}

SimpsonAccumulator::SimpsonAccumulator(std::size_t width, double step)
    : width_(width), step_(step), pair_sum_(width, 0.0), last_pair_(width, 0.0) {
  if (!(step > 0.0)) throw DomainError("SimpsonAccumulator: step must be positive");
  for (auto& r : recent_) r.assign(width, 0.0);
}

void SimpsonAccumulator::add(const std::vector<double>& values) {
  if (values.size() != width_) throw DomainError("SimpsonAccumulator: wrong number of values");
  std::rotate(recent_.begin(), recent_.begin() + 1, recent_.end());
  recent_[3] = values;
  ++samples_;
  const std::size_t k = samples_ - 1;
  if (k >= 2 && k % 2 == 0)
    for (std::size_t i = 0; i < width_; ++i) {
      last_pair_[i] = step_ / 3.0 * (recent_[1][i] + 4.0 * recent_[2][i] + recent_[3][i]);
      pair_sum_[i] += last_pair_[i];
    }
}

std::vector<double> SimpsonAccumulator::integral() const {
  std::vector<double> out(width_, 0.0);
  if (samples_ < 2) return out;
  const std::size_t n = samples_ - 1;
  for (std::size_t i = 0; i < width_; ++i) {
    if (n == 1) out[i] = 0.5 * step_ * (recent_[2][i] + recent_[3][i]);
    else if (n % 2 == 0) out[i] = pair_sum_[i];
    else
      out[i] = pair_sum_[i] - last_pair_[i] +
               3.0 * step_ / 8.0 * (recent_[0][i] + 3.0 * recent_[1][i] + 3.0 * recent_[2][i] + recent_[3][i]);
  }
  return out;
}

// Integrand layout: omega_RC, dissipation flux, E_T omega_RC, then each group times omega_RC.
YieldAccumulator::YieldAccumulator(const SiteNetwork& net, std::optional<PairPartition> partition, double step)
    : net_(&net),
      partition_(std::move(partition)),
      acc_(3 + (partition_ ? partition_->groups().size() : 0), step),
      buffer_(3 + (partition_ ? partition_->groups().size() : 0), 0.0) {
  if (partition_) partition_->validate(net.n_sites());
}

void YieldAccumulator::observe(double, const DensityMatrix& rho) {
  const double w = trapping_density(rho, *net_);
  buffer_[0] = w;
  buffer_[1] = dissipation_density(rho, *net_);
  buffer_[2] = w == 0.0 ? 0.0 : total_entanglement(rho) * w;
  if (partition_) {
    std::vector<double> groups;
    group_sums(rho, *partition_, groups);
    for (std::size_t g = 0; g < groups.size(); ++g) buffer_[3 + g] = groups[g] * w;
  }
  acc_.add(buffer_);
  terminal_excited_ = rho.excited_population();
}

SampleObserver YieldAccumulator::observer() {
  return [this](double t, const DensityMatrix& rho) { observe(t, rho); };
}

double YieldAccumulator::quantum_yield() const { return acc_.integral()[0]; }
double YieldAccumulator::dissipated() const { return acc_.integral()[1]; }
double YieldAccumulator::entanglement_integral_total() const { return acc_.integral()[2]; }

std::vector<double> YieldAccumulator::entanglement_integral_groups() const {
  const auto all = acc_.integral();
  return {all.begin() + 3, all.end()};
}

namespace {

double simpson_over(const Trajectory& traj, const std::function<double(const DensityMatrix&)>& f) {
  if (traj.states.empty()) throw DomainError("empty trajectory");
  SimpsonAccumulator acc(1, traj.stats.sample_step > 0.0 ? traj.stats.sample_step : traj.max_step);
  std::vector<double> v(1);
  for (const auto& s : traj.states) {
    v[0] = f(s);
    acc.add(v);
  }
  return acc.integral()[0];
}

}  // namespace

double quantum_yield(const Trajectory& traj, const SiteNetwork& net) {
  return simpson_over(traj, [&net](const DensityMatrix& rho) { return trapping_density(rho, net); });
}

double truncation_bound(const Trajectory& traj) {
  if (traj.states.empty()) throw DomainError("empty trajectory");
  return traj.states.back().excited_population();
}

double quantum_yield_exact(const Liouvillian& liouvillian, const DensityMatrix& rho0, const SiteNetwork& net) {
  const Eigen::MatrixXcd bar = integrated_state(liouvillian, rho0);
  if (static_cast<std::size_t>(bar.rows()) != net.n_sites())
    throw DomainError("quantum_yield_exact: Liouvillian and network sizes differ");
  double eta = 0.0;
  for (std::size_t m = 0; m < net.n_sites(); ++m)
    eta += net.trap_rates[m] * bar(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(m)).real();
  return eta;
}

double entanglement_yield(const Trajectory& traj, const SiteNetwork& net, const EntanglementFunctional& functional) {
  const double eta = quantum_yield(traj, net);
  if (!(eta >= kMinimumYieldForAverage))
    throw DomainError("entanglement_yield: quantum yield " + std::to_string(eta) +
                      " is too small for the trapping-weighted average");
  const double num = simpson_over(traj, [&](const DensityMatrix& rho) {
    const double w = trapping_density(rho, net);
    return w == 0.0 ? 0.0 : functional(rho) * w;
  });
  return num / eta;
}

EntanglementFunctional group_functional(const PairPartition& partition, const std::string& label) {
  for (const auto& g : partition.groups())
    if (g.label == label)
      return [pairs = g.pairs](const DensityMatrix& rho) {
        double e = 0.0;
        for (const auto& p : pairs) e += pair_tangle(rho, p.first, p.second);
        return e;
      };
  throw DomainError("group_functional: no group labelled '" + label + "'");
}

YieldReport compute_yield_report(const SiteNetwork& net, const Liouvillian& liouvillian, const DensityMatrix& rho0,
                                 const PairPartition& partition, const EvolveOptions& options) {
  YieldAccumulator acc(net, partition, sample_step(options));
  YieldReport r;
  r.stats = propagate(rho0, liouvillian, options, acc.observer());
  r.quantum_yield = acc.quantum_yield();
  r.dissipated = acc.dissipated();
  r.truncation_bound = acc.terminal_excited_population();
  r.yield_oracle = quantum_yield_exact(liouvillian, rho0, net);
  r.group_labels = partition.labels();
  if (r.truncation_bound > kTruncationWarning)
    r.warnings.push_back("horizon too short: excited population " + format_number(r.truncation_bound) +
                         " remains at t = " + format_number(r.stats.final_time) + " ps");
  if (std::abs(r.quantum_yield - r.yield_oracle) > std::max(1e-4, r.truncation_bound))
    r.warnings.push_back("quadrature yield " + format_number(r.quantum_yield) + " disagrees with linear-solve yield " +
                         format_number(r.yield_oracle));
  if (r.stats.loss_active && !r.stats.excited_monotone)
    r.warnings.push_back("excited population increased between samples");
  if (!(r.quantum_yield >= kMinimumYieldForAverage))
    throw DomainError("quantum yield " + format_number(r.quantum_yield) +
                      " is too small for the trapping-weighted entanglement average");
  r.entanglement_yield_total = acc.entanglement_integral_total() / r.quantum_yield;
  for (double v : acc.entanglement_integral_groups()) r.entanglement_yield_groups.push_back(v / r.quantum_yield);
  return r;
}

nlohmann::json solver_stats_to_json(const SolverStats& s) {
  return {{"steps", s.steps},
          {"rejected_steps", s.rejected},
          {"rhs_evaluations", s.rhs_evaluations},
          {"samples", s.samples},
          {"rtol", s.rtol},
          {"atol", s.atol},
          {"sample_step_ps", s.sample_step},
          {"final_time_ps", s.final_time},
          {"terminal_excited_population", s.terminal_excited_population},
          {"early_terminated", s.early_terminated},
          {"loss_active", s.loss_active},
          {"excited_monotone", s.excited_monotone},
          {"reduced_dimension", s.reduced_dimension}};
}

nlohmann::json yield_report_to_json(const YieldReport& r) {
  nlohmann::json groups = nlohmann::json::object();
  for (std::size_t g = 0; g < r.group_labels.size() && g < r.entanglement_yield_groups.size(); ++g)
    groups[r.group_labels[g]] = r.entanglement_yield_groups[g];
  return {{"quantum_yield", r.quantum_yield},
          {"yield_oracle", r.yield_oracle},
          {"truncation_bound", r.truncation_bound},
          {"dissipated", r.dissipated},
          {"entanglement_yields", {{"total", r.entanglement_yield_total}, {"groups", groups}}},
          {"warnings", r.warnings},
          {"solver", solver_stats_to_json(r.stats)}};
}

std::string format_number(double value) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", value);
  return buf;
}

ObservableTableWriter::ObservableTableWriter(std::ostream& out, const SiteNetwork& net,
                                             const PairPartition& partition)
    : out_(&out), net_(&net), partition_(partition) {
  partition_.validate(net.n_sites());
  *out_ << "time_ps,E_T";
  for (const auto& label : partition_.labels()) *out_ << ",E_" << label;
  *out_ << ",omega_RC\n";
}

void ObservableTableWriter::observe(double time, const DensityMatrix& rho) {
  std::vector<double> groups;
  group_sums(rho, partition_, groups);
  *out_ << format_number(time) << ',' << format_number(total_entanglement(rho));
  for (double g : groups) *out_ << ',' << format_number(g);
  *out_ << ',' << format_number(trapping_density(rho, *net_)) << '\n';
}

TrajectoryTableWriter::TrajectoryTableWriter(std::ostream& out, Eigen::Index n_sites) : out_(&out), n_sites_(n_sites) {
  *out_ << "time_ps";
  for (Eigen::Index i = 0; i <= n_sites_; ++i) *out_ << ",p" << i;
  for (Eigen::Index i = 0; i <= n_sites_; ++i)
    for (Eigen::Index j = i + 1; j <= n_sites_; ++j) *out_ << ",abs_a" << i << '_' << j;
  *out_ << '\n';
}

void TrajectoryTableWriter::observe(double time, const DensityMatrix& rho) {
  if (rho.n_sites() != n_sites_) throw DomainError("TrajectoryTableWriter: state size changed");
  *out_ << format_number(time);
  for (Eigen::Index i = 0; i <= n_sites_; ++i) *out_ << ',' << format_number(rho.population(i));
  for (Eigen::Index i = 0; i <= n_sites_; ++i)
    for (Eigen::Index j = i + 1; j <= n_sites_; ++j) *out_ << ',' << format_number(std::abs(rho(i, j)));
  *out_ << '\n';
}

}  // namespace eyield
