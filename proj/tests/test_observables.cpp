#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <random>
#include <sstream>

#include "eyield/error.hpp"
#include "eyield/io.hpp"
#include "eyield/liouvillian.hpp"
#include "eyield/observables.hpp"
#include "support/oracles.hpp"

using namespace eyield;
using cd = std::complex<double>;

namespace {

const std::filesystem::path kData(EYIELD_DATA_DIR);

SiteNetwork single_site(double kappa, double gamma) {
  SiteNetwork net;
  net.energies = {12000.0};
  net.couplings = Eigen::MatrixXd::Zero(1, 1);
  net.dissipation_rates = {gamma};
  net.trap_rates = {kappa};
  return net;
}

SiteNetwork seven_sites_trap3() {
  SiteNetwork net;
  net.energies.assign(7, 0.0);
  net.couplings = Eigen::MatrixXd::Zero(7, 7);
  net.dissipation_rates.assign(7, 0.0);
  net.trap_rates.assign(7, 0.0);
  net.trap_rates[2] = 1.0;
  return net;
}

DensityMatrix pure(const Eigen::VectorXcd& psi) { return DensityMatrix(psi * psi.adjoint()); }

Eigen::VectorXcd uniform(int n) {
  Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(n + 1);
  psi.tail(n).setConstant(1.0 / std::sqrt(static_cast<double>(n)));
  return psi;
}

BathSpec no_bath() { return BathSpec{}; }

BathSpec secular(double er) {
  BathSpec b;
  b.reorg_energy = er;
  return b;
}

}  // namespace

TEST_CASE("trapping density") {
  const auto net = seven_sites_trap3();
  Eigen::MatrixXcd ground = Eigen::MatrixXcd::Zero(8, 8);
  ground(0, 0) = 1.0;
  CHECK(trapping_density(DensityMatrix(ground), net) == 0.0);
  CHECK(trapping_density(localized_state(3, 7), net) == 1.0);
  Eigen::MatrixXcd mix = Eigen::MatrixXcd::Zero(8, 8);
  mix(3, 3) = 0.5;
  mix(1, 1) = 0.5;
  CHECK(trapping_density(DensityMatrix(mix), net) == 0.5);
}

TEST_CASE("pair tangle") {
  Eigen::VectorXcd bell = Eigen::VectorXcd::Zero(3);
  bell(1) = bell(2) = 1.0 / std::sqrt(2.0);
  CHECK(pair_tangle(pure(bell), 1, 2) == doctest::Approx(1.0).epsilon(1e-15));
  const auto loc = localized_state(1, 4);
  for (int m = 1; m <= 4; ++m)
    for (int n = m + 1; n <= 4; ++n) CHECK(pair_tangle(loc, m, n) == 0.0);
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(3, 3);
  m(1, 1) = m(2, 2) = 0.5;
  m(1, 2) = m(2, 1) = 0.3;
  CHECK(pair_tangle(DensityMatrix(m), 1, 2) == doctest::Approx(0.36).epsilon(1e-15));
  CHECK(pair_tangle(DensityMatrix(m), 2, 1) == doctest::Approx(0.36).epsilon(1e-15));
  CHECK_THROWS_AS(pair_tangle(DensityMatrix(m), 1, 1), DomainError);
  CHECK_THROWS_AS(pair_tangle(DensityMatrix(m), 1, 3), DomainError);
}

TEST_CASE("total entanglement of the uniform superposition") {
  for (int n : {2, 3, 7}) {
    const double expected = 2.0 * (n - 1) / n;
    CHECK(total_entanglement(pure(uniform(n))) == doctest::Approx(expected).epsilon(1e-14));
  }
  CHECK(total_entanglement(pure(uniform(7))) == doctest::Approx(12.0 / 7.0).epsilon(1e-14));
}

TEST_CASE("FMO partition: identity and Bell pair") {
  const auto part = load_partition(kData / "fmo_partition.json");
  part.validate(7);
  std::size_t pairs = 0;
  for (const auto& g : part.groups()) pairs += g.pairs.size();
  CHECK(pairs == 21);
  std::mt19937_64 rng(6);
  for (int i = 0; i < 200; ++i) {
    const DensityMatrix rho(oracle::random_density(rng, 8));
    const auto groups = partitioned_entanglement(rho, part);
    double sum = 0.0;
    for (double g : groups) sum += g;
    CHECK(std::abs(sum - total_entanglement(rho)) <= 1e-15);
  }
  Eigen::VectorXcd bell = Eigen::VectorXcd::Zero(8);
  bell(1) = bell(2) = 1.0 / std::sqrt(2.0);
  const auto g = partitioned_entanglement(pure(bell), part);
  const auto labels = part.labels();
  for (std::size_t k = 0; k < labels.size(); ++k)
    CHECK(g[k] == doctest::Approx(labels[k] == "dim" ? 1.0 : 0.0).epsilon(1e-15));
}

TEST_CASE("invalid partitions name the offending pairs") {
  PairPartition missing({{"a", {SitePair(1, 2)}}, {"b", {SitePair(1, 3)}}});
  CHECK_THROWS_WITH_AS(missing.validate(3), doctest::Contains("(2,3)"), ValidationError);
  PairPartition dup({{"a", {SitePair(1, 2), SitePair(2, 3)}}, {"b", {SitePair(2, 1), SitePair(1, 3)}}});
  CHECK_THROWS_WITH_AS(dup.validate(3), doctest::Contains("(1,2)"), ValidationError);
  CHECK_THROWS_AS(partitioned_entanglement(localized_state(1, 3), missing), ValidationError);
}

TEST_CASE("monogamy: localized, W state, random pure states") {
  const auto loc = monogamy_check(localized_state(1, 5), 1);
  CHECK(loc.lhs == 0.0);
  CHECK(loc.rhs == 0.0);
  const auto w = monogamy_check(pure(uniform(7)), 1);
  CHECK(w.lhs == doctest::Approx(24.0 / 49.0).epsilon(1e-14));
  CHECK(w.rhs == doctest::Approx(24.0 / 49.0).epsilon(1e-14));
  std::mt19937_64 rng(13);
  double worst = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const int n = 2 + i % 6;
    const auto rho = pure(oracle::random_single_excitation(rng, n, i % 2 == 1));
    for (int site = 1; site <= n; ++site) {
      const auto r = monogamy_check(rho, site);
      worst = std::max(worst, std::abs(r.lhs - r.rhs));
      if (i % 2 == 0) {
        const double p = rho.population(site);
        CHECK(r.rhs == doctest::Approx(4.0 * p * (1.0 - p)).epsilon(1e-12));
      }
    }
  }
  CHECK(worst < 1e-12);
  Eigen::MatrixXcd mixed = Eigen::MatrixXcd::Zero(3, 3);
  mixed(1, 1) = mixed(2, 2) = 0.5;
  CHECK_THROWS_AS(monogamy_check(DensityMatrix(mixed), 1), DomainError);
}

TEST_CASE("Simpson accumulator is exact for cubics with any sample count") {
  auto f = [](double t) { return 2.0 - t + 3.0 * t * t - 0.5 * t * t * t; };
  auto exact = [](double t) { return 2.0 * t - 0.5 * t * t + t * t * t - 0.125 * t * t * t * t; };
  const double h = 0.1;
  for (int samples = 2; samples <= 12; ++samples) {
    SimpsonAccumulator acc(1, h);
    for (int k = 0; k < samples; ++k) acc.add({f(k * h)});
    const double t_end = (samples - 1) * h;
    if (samples == 2) {
      CHECK(acc.integral()[0] == doctest::Approx(0.5 * h * (f(0) + f(h))));
    } else {
      CHECK(acc.integral()[0] == doctest::Approx(exact(t_end)).epsilon(1e-13));
    }
  }
  SimpsonAccumulator none(2, h);
  CHECK(none.integral() == std::vector<double>{0.0, 0.0});
  CHECK_THROWS_AS(none.add({1.0}), DomainError);
}

TEST_CASE("quantum yield of a single site is the branching ratio") {
  const auto net = single_site(1.0, 1e-3);
  const auto l = build_liouvillian(net, no_bath());
  const auto traj = evolve(localized_state(1, 1), l);
  CHECK(quantum_yield(traj, net) == doctest::Approx(1000.0 / 1001.0).epsilon(1e-6));
  CHECK(std::abs(quantum_yield(traj, net) - 1000.0 / 1001.0) < 1e-6);
  CHECK(quantum_yield_exact(l, localized_state(1, 1), net) == doctest::Approx(1000.0 / 1001.0).epsilon(1e-12));
  CHECK(truncation_bound(traj) < 1e-9);
}

TEST_CASE("no trapping anywhere gives zero yield and an undefined average") {
  SiteNetwork net = single_site(0.0, 0.5);
  const auto l = build_liouvillian(net, no_bath());
  const auto traj = evolve(localized_state(1, 1), l);
  CHECK(quantum_yield(traj, net) == 0.0);
  CHECK(quantum_yield_exact(l, localized_state(1, 1), net) == 0.0);
  CHECK_THROWS_AS(entanglement_yield(traj, net, total_entanglement), DomainError);
}

TEST_CASE("entanglement yield: no coherence gives zero, constant E gives the constant") {
  SiteNetwork net = seven_sites_trap3();
  for (std::size_t m = 0; m < 7; ++m) {
    net.energies[m] = 12000.0 + 30.0 * static_cast<double>(m);
    net.dissipation_rates[m] = 1e-3;
  }
  const auto l = build_liouvillian(net, secular(35.0));
  const auto traj = evolve(localized_state(3, 7), l);
  CHECK(entanglement_yield(traj, net, total_entanglement) == 0.0);
  CHECK(entanglement_yield(traj, net, [](const DensityMatrix&) { return 0.25; }) ==
        doctest::Approx(0.25).epsilon(1e-14));
}

TEST_CASE("yield report on FMO: oracle agreement, group sums, probability budget") {
  const auto net = load_network(kData / "fmo_network.json");
  const auto part = load_partition(kData / "fmo_partition.json");
  const auto l = build_liouvillian(net, secular(35.0));
  const auto r = compute_yield_report(net, l, localized_state(6, 7), part);
  CHECK(std::abs(r.quantum_yield - r.yield_oracle) < std::max(1e-4, r.truncation_bound));
  CHECK(r.quantum_yield > 0.95);
  CHECK(r.quantum_yield + r.dissipated + r.truncation_bound == doctest::Approx(1.0).epsilon(1e-6));
  double sum = 0.0;
  for (double g : r.entanglement_yield_groups) sum += g;
  CHECK(std::abs(sum - r.entanglement_yield_total) < 1e-10);
  CHECK(r.warnings.empty());
  const auto j = yield_report_to_json(r);
  CHECK(j["entanglement_yields"]["groups"].size() == 4);
  CHECK(j["solver"]["early_terminated"] == true);
}

TEST_CASE("stored-trajectory and streaming evaluations agree") {
  std::mt19937_64 rng(23);
  auto net = oracle::random_network(rng, 4);
  PairPartition part({{"low", {SitePair(1, 2), SitePair(1, 3), SitePair(1, 4)}},
                      {"high", {SitePair(2, 3), SitePair(2, 4), SitePair(3, 4)}}});
  const auto l = build_liouvillian(net, secular(5.0));
  const auto rho0 = localized_state(1, 4);
  const auto traj = evolve(rho0, l);
  const auto r = compute_yield_report(net, l, rho0, part);
  CHECK(quantum_yield(traj, net) == doctest::Approx(r.quantum_yield).epsilon(1e-13));
  CHECK(entanglement_yield(traj, net, total_entanglement) == doctest::Approx(r.entanglement_yield_total).epsilon(1e-12));
  CHECK(entanglement_yield(traj, net, group_functional(part, "high")) ==
        doctest::Approx(r.entanglement_yield_groups[1]).epsilon(1e-12));
  CHECK_THROWS_AS(group_functional(part, "nope"), DomainError);
}

TEST_CASE("pure-state monogamy holds along unitary dynamics") {
  std::mt19937_64 rng(29);
  auto net = oracle::random_network(rng, 5);
  const auto l = build_liouvillian(net, no_bath(), {.include_loss = false, .include_bath = false});
  double worst = 0.0;
  propagate(localized_state(2, 5), l, {.horizon = 2.0, .termination_population = 0.0},
            [&](double, const DensityMatrix& rho) {
              for (int n = 1; n <= 5; ++n) {
                double lhs = 0.0;
                for (int m = 1; m <= 5; ++m)
                  if (m != n) lhs += pair_tangle(rho, n, m);
                const double p = rho.population(n);
                worst = std::max(worst, std::abs(lhs - 4.0 * p * (1.0 - p)));
              }
            });
  CHECK(worst < 1e-8);
}

TEST_CASE("entanglement yield converges when the sample step is halved") {
  const auto net = load_network(kData / "fmo_network.json");
  const auto part = load_partition(kData / "fmo_partition.json");
  const auto l = build_liouvillian(net, secular(35.0));
  const auto a = compute_yield_report(net, l, localized_state(1, 7), part, {.max_step = 0.005});
  const auto b = compute_yield_report(net, l, localized_state(1, 7), part, {.max_step = 0.0025});
  CHECK(std::abs(a.entanglement_yield_total - b.entanglement_yield_total) < 1e-5);
  for (std::size_t g = 0; g < a.entanglement_yield_groups.size(); ++g)
    CHECK(std::abs(a.entanglement_yield_groups[g] - b.entanglement_yield_groups[g]) < 1e-5);
}

TEST_CASE("CSV writers") {
  const auto net = load_network(kData / "fmo_network.json");
  const auto part = load_partition(kData / "fmo_partition.json");
  std::ostringstream obs, traj;
  ObservableTableWriter w(obs, net, part);
  TrajectoryTableWriter t(traj, 7);
  w.observe(0.0, localized_state(6, 7));
  t.observe(0.0, localized_state(6, 7));
  CHECK(obs.str() == "time_ps,E_T,E_DD,E_AD,E_dim,E_7rest,omega_RC\n0,0,0,0,0,0,0\n");
  std::string header;
  std::istringstream(traj.str()) >> header;
  std::size_t commas = std::count(header.begin(), header.end(), ',');
  CHECK(commas == 8 + 28);
  CHECK(format_number(1.0 / 3.0) == "0.333333333333");
}
