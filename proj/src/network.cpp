#include "eyield/network.hpp"

#include <cmath>
#include <sstream>

#include "eyield/error.hpp"
#include "eyield/units.hpp"

namespace eyield {

namespace {

std::string pair_name(Eigen::Index m, Eigen::Index n) {
  std::ostringstream os;
  os << "(" << m + 1 << "," << n + 1 << ")";
  return os.str();
}

void check_rates(const std::vector<double>& rates, const char* what, std::size_t n,
                 std::vector<std::string>& bad) {
  if (rates.size() != n) {
    std::ostringstream os;
    os << what << ": expected " << n << " entries, got " << rates.size();
    bad.push_back(os.str());
    return;
  }
  for (std::size_t m = 0; m < n; ++m) {
    if (!(rates[m] >= 0.0) || !std::isfinite(rates[m])) {
      std::ostringstream os;
      os << what << " of site " << m + 1 << " must be finite and >= 0 (got " << rates[m] << ")";
      bad.push_back(os.str());
    }
  }
}

void check_distance_matrix(const Eigen::MatrixXd& d, const char* what,
                           std::vector<std::string>& bad) {
  for (Eigen::Index m = 0; m < d.rows(); ++m) {
    if (d(m, m) != 0.0) bad.push_back(std::string(what) + ": nonzero diagonal at site " +
                                      std::to_string(m + 1));
    for (Eigen::Index n = m + 1; n < d.cols(); ++n) {
      if (d(m, n) != d(n, m)) bad.push_back(std::string(what) + ": asymmetric at pair " + pair_name(m, n));
      if (!(d(m, n) >= 0.0) || !(d(n, m) >= 0.0))
        bad.push_back(std::string(what) + ": negative entry at pair " + pair_name(m, n));
    }
  }
}

}  // namespace

std::vector<std::string> validate(const SiteNetwork& net) {
  std::vector<std::string> bad;
  const std::size_t n = net.n_sites();
  const auto ni = static_cast<Eigen::Index>(n);
  if (n == 0) bad.push_back("network has no sites");
  for (std::size_t m = 0; m < n; ++m)
    if (!std::isfinite(net.energies[m])) bad.push_back("energy of site " + std::to_string(m + 1) + " is not finite");

  if (net.couplings.rows() != ni || net.couplings.cols() != ni) {
    std::ostringstream os;
    os << "couplings: expected " << n << "x" << n << " matrix, got " << net.couplings.rows() << "x"
       << net.couplings.cols();
    bad.push_back(os.str());
  } else {
    for (Eigen::Index m = 0; m < ni; ++m) {
      if (net.couplings(m, m) != 0.0)
        bad.push_back("couplings: nonzero diagonal at site " + std::to_string(m + 1));
      for (Eigen::Index k = m + 1; k < ni; ++k)
        if (net.couplings(m, k) != net.couplings(k, m))
          bad.push_back("couplings: asymmetric at pair " + pair_name(m, k));
    }
  }

  check_rates(net.dissipation_rates, "dissipation rate", n, bad);
  check_rates(net.trap_rates, "trap rate", n, bad);

  if (!net.labels.empty() && net.labels.size() != n)
    bad.push_back("labels: expected " + std::to_string(n) + " entries");
  if (!net.positions.empty() && net.positions.size() != n)
    bad.push_back("positions: expected " + std::to_string(n) + " entries");
  if (net.distances) {
    if (net.distances->rows() != ni || net.distances->cols() != ni)
      bad.push_back("distances: expected " + std::to_string(n) + "x" + std::to_string(n) + " matrix");
    else
      check_distance_matrix(*net.distances, "distances", bad);
  }

  if (!bad.empty()) throw ValidationError(std::move(bad));

  std::vector<std::string> warnings;
  bool any_trap = false;
  for (double k : net.trap_rates) any_trap = any_trap || k > 0.0;
  if (!any_trap) warnings.push_back("no site has a positive trap rate; quantum yield will be zero");
  return warnings;
}

std::optional<Eigen::MatrixXd> distance_matrix(const SiteNetwork& net) {
  if (net.distances) return *net.distances;
  if (net.positions.empty()) return std::nullopt;
  const auto n = static_cast<Eigen::Index>(net.positions.size());
  Eigen::MatrixXd d = Eigen::MatrixXd::Zero(n, n);
  for (Eigen::Index m = 0; m < n; ++m)
    for (Eigen::Index k = m + 1; k < n; ++k) {
      const double r = (net.positions[static_cast<std::size_t>(m)] -
                        net.positions[static_cast<std::size_t>(k)]).norm();
      d(m, k) = r;
      d(k, m) = r;
    }
  return d;
}

Eigen::MatrixXcd build_hamiltonian(const SiteNetwork& net) {
  const auto n = static_cast<Eigen::Index>(net.n_sites());
  if (net.couplings.rows() != n || net.couplings.cols() != n)
    throw ValidationError({"couplings dimension does not match the number of site energies"});
  Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(n + 1, n + 1);
  for (Eigen::Index m = 0; m < n; ++m) {
    h(m + 1, m + 1) = units::to_angular(net.energies[static_cast<std::size_t>(m)]);
    for (Eigen::Index k = 0; k < n; ++k)
      if (k != m) h(m + 1, k + 1) = units::to_angular(net.couplings(m, k));
  }
  return h;
}

}  // namespace eyield
