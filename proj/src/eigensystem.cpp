#include "eyield/eigensystem.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <tuple>

#include "eyield/error.hpp"
#include "eyield/units.hpp"

namespace eyield {

namespace {

void fix_phase(Eigen::MatrixXcd& vectors) {
  for (Eigen::Index k = 0; k < vectors.cols(); ++k) {
    auto col = vectors.col(k);
    for (Eigen::Index i = 0; i < col.size(); ++i) {
      const double mag = std::abs(col(i));
      if (mag > 1e-12) {
        col *= std::conj(col(i)) / mag;
        col(i) = mag;
        break;
      }
    }
  }
}

struct RawTransition {
  double omega;
  Transition t;
};

std::vector<FrequencyBin> build_bins(const Eigen::VectorXd& energies) {
  const auto n = energies.size();
  std::vector<RawTransition> raw;
  raw.reserve(static_cast<std::size_t>(n * n));
  for (int from = 0; from < n; ++from)
    for (int to = 0; to < n; ++to) raw.push_back({energies(from) - energies(to), {from, to}});
  std::stable_sort(raw.begin(), raw.end(),
                   [](const RawTransition& a, const RawTransition& b) { return a.omega < b.omega; });

  const double tol = units::to_angular(kFrequencyBinToleranceCm);
  std::vector<FrequencyBin> bins;
  std::size_t start = 0;
  while (start < raw.size()) {
    std::size_t end = start + 1;
    while (end < raw.size() && raw[end].omega - raw[end - 1].omega <= tol) ++end;

    FrequencyBin bin;
    bool has_diagonal = false;
    // Representative: the member with the smallest unordered index pair, so
    // that mirrored bins carry exactly negated frequencies.
    auto key = [](const Transition& t) {
      return std::make_tuple(std::min(t.from, t.to), std::max(t.from, t.to), t.from);
    };
    const RawTransition* rep = &raw[start];
    for (std::size_t i = start; i < end; ++i) {
      bin.transitions.push_back(raw[i].t);
      has_diagonal = has_diagonal || raw[i].t.from == raw[i].t.to;
      if (key(raw[i].t) < key(rep->t)) rep = &raw[i];
    }
    bin.omega = has_diagonal ? 0.0 : rep->omega;
    std::sort(bin.transitions.begin(), bin.transitions.end(), [](const Transition& a, const Transition& b) {
      return std::tie(a.from, a.to) < std::tie(b.from, b.to);
    });
    bins.push_back(std::move(bin));
    start = end;
  }
  return bins;
}

}  // namespace

EigenSystem diagonalize_single_excitation(const Eigen::MatrixXcd& hamiltonian) {
  if (hamiltonian.rows() != hamiltonian.cols() || hamiltonian.rows() < 2)
    throw DomainError("diagonalize_single_excitation: need a square matrix of dimension >= 2");
  const auto n = hamiltonian.rows() - 1;
  const Eigen::MatrixXcd block = hamiltonian.bottomRightCorner(n, n);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(block);
  if (solver.info() != Eigen::Success) throw Error("diagonalize_single_excitation: eigen solver failed");

  EigenSystem es;
  es.energies = solver.eigenvalues();
  es.coefficients = solver.eigenvectors();
  fix_phase(es.coefficients);
  es.bins = build_bins(es.energies);
  return es;
}

}  // namespace eyield
