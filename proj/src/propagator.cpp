#include "eyield/propagator.hpp"

#include <cmath>
#include <complex>
#include <sstream>

#include "eyield/dopri5.hpp"
#include "eyield/error.hpp"

namespace eyield {

using cd = std::complex<double>;

Eigen::VectorXd to_hermitian_coordinates(const Eigen::MatrixXcd& rho) {
  const auto d = rho.rows();
  Eigen::VectorXd p(d * d);
  for (Eigen::Index j = 0; j < d; ++j)
    for (Eigen::Index i = 0; i < d; ++i) {
      if (i == j) p(i + d * j) = rho(i, i).real();
      else if (i < j) p(i + d * j) = rho(i, j).real();
      else p(i + d * j) = rho(j, i).imag();
    }
  return p;
}

Eigen::MatrixXcd from_hermitian_coordinates(const Eigen::VectorXd& p, Eigen::Index dim) {
  if (p.size() != dim * dim) throw DomainError("from_hermitian_coordinates: size mismatch");
  Eigen::MatrixXcd rho(dim, dim);
  for (Eigen::Index j = 0; j < dim; ++j) {
    rho(j, j) = p(j + dim * j);
    for (Eigen::Index i = 0; i < j; ++i) {
      const cd v(p(i + dim * j), p(j + dim * i));
      rho(i, j) = v;
      rho(j, i) = std::conj(v);
    }
  }
  return rho;
}

Eigen::MatrixXd hermitian_coordinates_matrix(const Liouvillian& liouvillian) {
  const auto d = liouvillian.system_dimension();
  const auto n = d * d;
  const auto& m = liouvillian.matrix();
  const cd i_unit(0.0, 1.0);
  Eigen::MatrixXd out(n, n);
  Eigen::VectorXcd image(n);
  double residual = 0.0;
  for (Eigen::Index k = 0; k < n; ++k) {
    const auto i = k % d;
    const auto j = k / d;
    // Image of the k-th basis matrix: |i><i|, |i><j| + |j><i| or i|a><b| - i|b><a|.
    if (i == j) image = m.col(i + d * i);
    else if (i < j) image = m.col(i + d * j) + m.col(j + d * i);
    else image = i_unit * m.col(j + d * i) - i_unit * m.col(i + d * j);

    for (Eigen::Index c = 0; c < d; ++c)
      for (Eigen::Index r = 0; r <= c; ++r) {
        const cd upper = image(r + d * c);
        const cd lower = image(c + d * r);
        residual = std::max(residual, std::abs(upper - std::conj(lower)));
        out(r + d * c, k) = upper.real();
        if (r != c) out(c + d * r, k) = upper.imag();
      }
  }
  const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
  if (residual > 1e-10 * scale)
    throw DomainError("superoperator does not preserve Hermiticity (residual " + std::to_string(residual) + ")");
  return out;
}

namespace {

std::vector<Eigen::Index> reachable_subspace(const Eigen::MatrixXd& a, const Eigen::VectorXd& p0) {
  const auto n = a.rows();
  std::vector<char> seen(static_cast<std::size_t>(n), 0);
  std::vector<Eigen::Index> queue;
  for (Eigen::Index i = 0; i < n; ++i)
    if (p0(i) != 0.0) {
      seen[static_cast<std::size_t>(i)] = 1;
      queue.push_back(i);
    }
  for (std::size_t q = 0; q < queue.size(); ++q) {
    const auto c = queue[q];
    for (Eigen::Index r = 0; r < n; ++r)
      if (!seen[static_cast<std::size_t>(r)] && a(r, c) != 0.0) {
        seen[static_cast<std::size_t>(r)] = 1;
        queue.push_back(r);
      }
  }
  std::vector<Eigen::Index> idx;
  for (Eigen::Index i = 0; i < n; ++i)
    if (seen[static_cast<std::size_t>(i)]) idx.push_back(i);
  return idx;
}

bool has_loss(const Liouvillian& l) {
  for (const auto& c : l.manifest())
    if ((c.kind == ChannelKind::Dissipation || c.kind == ChannelKind::Trapping) && c.rate > 0.0) return true;
  return false;
}

void enforce(const DensityMatrix& rho, double t, const StateTolerances& tol) {
  const auto check = rho.check(tol);
  if (!check.ok(tol)) {
    std::ostringstream os;
    os.precision(10);
    os << "density-matrix invariant violated at t = " << t << " ps: " << check.describe();
    throw StateInvariantError(os.str());
  }
}

// Sector of coherence |i><j| under the excitation number: +1 for |0><m|,
// -1 for |m><0|, 0 otherwise.
int sector(Eigen::Index i, Eigen::Index j) { return (i == 0 ? 1 : 0) - (j == 0 ? 1 : 0); }

// Optical-frequency rotation of the ground-excited coherences is removed by
// working in a frame rotating at the mean excited-state frequency. This is
// exact when L does not mix sectors, which holds for every generator built
// here; otherwise the frequency is zero and the frame is the identity.
double frame_frequency(const Eigen::MatrixXcd& m, Eigen::Index d) {
  if (d < 2) return 0.0;
  const double scale = m.cwiseAbs().maxCoeff();
  for (Eigen::Index b = 0; b < m.cols(); ++b)
    for (Eigen::Index a = 0; a < m.rows(); ++a)
      if (sector(a % d, a / d) != sector(b % d, b / d) && std::abs(m(a, b)) > 1e-14 * scale) return 0.0;
  double mean = 0.0;
  for (Eigen::Index k = 1; k < d; ++k) mean += m(d * k, d * k).imag();
  return mean / static_cast<double>(d - 1);
}

long interval_count(const EvolveOptions& options) {
  return std::max(1L, static_cast<long>(std::ceil(options.horizon / options.max_step - 1e-9)));
}

}  // namespace

double sample_step(const EvolveOptions& options) {
  if (!(options.horizon > 0.0) || !(options.max_step > 0.0))
    throw DomainError("horizon and max_step must be positive");
  return options.horizon / static_cast<double>(interval_count(options));
}

SolverStats propagate(const DensityMatrix& rho0, const Liouvillian& liouvillian, const EvolveOptions& options,
                      const SampleObserver& observer) {
  const auto d = liouvillian.system_dimension();
  if (rho0.dimension() != d) throw DomainError("propagate: state and Liouvillian dimensions differ");
  if (!(options.horizon > 0.0)) throw DomainError("propagate: horizon must be positive");
  if (!(options.max_step > 0.0)) throw DomainError("propagate: max_step must be positive");
  if (options.check_states) enforce(rho0, 0.0, options.tolerances);

  const double omega = frame_frequency(liouvillian.matrix(), d);
  Eigen::MatrixXcd shifted = liouvillian.matrix();
  for (Eigen::Index k = 1; k < d; ++k) {
    shifted(d * k, d * k) -= cd(0.0, omega);
    shifted(k, k) += cd(0.0, omega);
  }
  const Eigen::MatrixXd full = hermitian_coordinates_matrix(Liouvillian(std::move(shifted), d, {}));
  const Eigen::VectorXd p0 = to_hermitian_coordinates(rho0.matrix());
  const auto idx = reachable_subspace(full, p0);
  const auto r = static_cast<Eigen::Index>(idx.size());
  Eigen::MatrixXd reduced(r, r);
  Eigen::VectorXd y0(r);
  for (Eigen::Index a = 0; a < r; ++a) {
    y0(a) = p0(idx[static_cast<std::size_t>(a)]);
    for (Eigen::Index b = 0; b < r; ++b)
      reduced(a, b) = full(idx[static_cast<std::size_t>(a)], idx[static_cast<std::size_t>(b)]);
  }
  std::vector<Eigen::Index> excited_slots;
  for (Eigen::Index a = 0; a < r; ++a) {
    const auto k = idx[static_cast<std::size_t>(a)];
    if (k % d == k / d && k % d != 0) excited_slots.push_back(a);
  }

  SolverStats stats;
  stats.rtol = options.rtol;
  stats.atol = options.atol;
  stats.loss_active = has_loss(liouvillian);
  stats.reduced_dimension = r;

  const double dt = sample_step(options);
  const long n_intervals = interval_count(options);
  stats.sample_step = dt;

  Eigen::VectorXd p_full = Eigen::VectorXd::Zero(d * d);
  auto excited = [&](const Eigen::VectorXd& y) {
    double s = 0.0;
    for (auto a : excited_slots) s += y(a);
    return s;
  };
  auto emit = [&](double t, const Eigen::VectorXd& y) {
    for (Eigen::Index a = 0; a < r; ++a) p_full(idx[static_cast<std::size_t>(a)]) = y(a);
    Eigen::MatrixXcd m = from_hermitian_coordinates(p_full, d);
    if (omega != 0.0) {
      const cd phase = std::polar(1.0, omega * t);
      for (Eigen::Index k = 1; k < d; ++k) {
        m(0, k) *= phase;
        m(k, 0) = std::conj(m(0, k));
      }
    }
    DensityMatrix rho(std::move(m));
    if (options.check_states) enforce(rho, t, options.tolerances);
    ++stats.samples;
    if (observer) observer(t, rho);
  };

  emit(0.0, y0);
  double previous_excited = excited(y0);
  stats.terminal_excited_population = previous_excited;
  stats.final_time = 0.0;
  if (options.termination_population > 0.0 && previous_excited < options.termination_population) {
    stats.early_terminated = true;
    return stats;
  }

  Dopri5Options dopts;
  dopts.rtol = options.rtol;
  dopts.atol = options.atol;
  dopts.max_step = options.max_step;
  auto rhs = [&reduced](double, const Eigen::VectorXd& y, Eigen::VectorXd& dy) { dy.noalias() = reduced * y; };
  Dopri5<decltype(rhs)> solver(rhs, y0, 0.0, dopts);

  Eigen::VectorXd y(r);
  for (long k = 1; k <= n_intervals; ++k) {
    const double t = k == n_intervals ? options.horizon : static_cast<double>(k) * dt;
    while (solver.t() < t) solver.step(options.horizon);
    solver.dense(t, y);
    emit(t, y);
    const double pe = excited(y);
    if (pe > previous_excited + 1e-9) stats.excited_monotone = false;
    previous_excited = pe;
    stats.final_time = t;
    stats.terminal_excited_population = pe;
    if (options.termination_population > 0.0 && pe < options.termination_population) {
      stats.early_terminated = true;
      break;
    }
  }
  stats.steps = solver.stats().steps;
  stats.rejected = solver.stats().rejected;
  stats.rhs_evaluations = solver.stats().rhs_evaluations;
  return stats;
}

Trajectory evolve(const DensityMatrix& rho0, const Liouvillian& liouvillian, const EvolveOptions& options) {
  Trajectory traj;
  traj.max_step = options.max_step;
  traj.stats = propagate(rho0, liouvillian, options, [&traj](double t, const DensityMatrix& rho) {
    traj.times.push_back(t);
    traj.states.push_back(rho);
  });
  return traj;
}

Eigen::MatrixXcd integrated_state(const Liouvillian& liouvillian, const DensityMatrix& rho0) {
  const auto d = liouvillian.system_dimension();
  if (rho0.dimension() != d) throw DomainError("integrated_state: state and Liouvillian dimensions differ");
  const auto n = d - 1;
  std::vector<Eigen::Index> idx;
  for (Eigen::Index j = 1; j < d; ++j)
    for (Eigen::Index i = 1; i < d; ++i) idx.push_back(i + d * j);
  const auto m = static_cast<Eigen::Index>(idx.size());
  Eigen::MatrixXcd block(m, m);
  Eigen::VectorXcd rhs(m);
  for (Eigen::Index a = 0; a < m; ++a) {
    rhs(a) = -rho0.matrix()(idx[static_cast<std::size_t>(a)] % d, idx[static_cast<std::size_t>(a)] / d);
    for (Eigen::Index b = 0; b < m; ++b)
      block(a, b) = liouvillian.matrix()(idx[static_cast<std::size_t>(a)], idx[static_cast<std::size_t>(b)]);
  }
  Eigen::FullPivLU<Eigen::MatrixXcd> lu(block);
  lu.setThreshold(1e-12);
  if (!lu.isInvertible())
    throw SingularSystemError(
        "integrated_state: the excited-subspace generator is singular, so some excitation never decays; "
        "give every site a decay path (nonzero Gamma or kappa)");
  const Eigen::VectorXcd x = lu.solve(rhs);
  const double residual = (block * x - rhs).norm() / std::max(1.0, rhs.norm());
  if (!(residual < 1e-8))
    throw SingularSystemError("integrated_state: linear solve is ill-conditioned (residual " +
                              std::to_string(residual) + ")");
  Eigen::MatrixXcd out(n, n);
  for (Eigen::Index a = 0; a < m; ++a) out(a % n, a / n) = x(a);
  return out;
}

}  // namespace eyield
