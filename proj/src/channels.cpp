#include "eyield/channels.hpp"

#include <algorithm>
#include <cmath>

#include "eyield/error.hpp"

namespace eyield {

std::string_view to_string(ChannelKind kind) {
  switch (kind) {
    case ChannelKind::Relaxation: return "relaxation";
    case ChannelKind::SiteDephasing: return "site_dephasing";
    case ChannelKind::Dissipation: return "dissipation";
    case ChannelKind::Trapping: return "trapping";
  }
  return "unknown";
}

Eigen::MatrixXcd site_bin_operator(const EigenSystem& es, const FrequencyBin& bin, Eigen::Index site) {
  const auto n = es.size();
  const auto& c = es.coefficients;
  Eigen::MatrixXcd block = Eigen::MatrixXcd::Zero(n, n);
  for (const auto& t : bin.transitions) {
    const auto weight = std::conj(c(site, t.to)) * c(site, t.from);
    block.noalias() += weight * c.col(t.to) * c.col(t.from).adjoint();
  }
  Eigen::MatrixXcd op = Eigen::MatrixXcd::Zero(n + 1, n + 1);
  op.bottomRightCorner(n, n) = block;
  return op;
}

std::vector<JumpChannel> build_secular_generator(const EigenSystem& es, const SiteNetwork& net,
                                                 const BathSpec& bath, ClampReport* report) {
  const auto n = es.size();
  if (static_cast<std::size_t>(n) != net.n_sites())
    throw DomainError("build_secular_generator: eigensystem and network sizes differ");

  Eigen::MatrixXd correlation = Eigen::MatrixXd::Identity(n, n);
  if (bath.correlation_length > 0.0) {
    const auto d = distance_matrix(net);
    if (!d) throw ConfigError("correlation_length > 0 requires site positions or a distance matrix");
    for (Eigen::Index m = 0; m < n; ++m)
      for (Eigen::Index k = 0; k < n; ++k)
        if (m != k) correlation(m, k) = spatial_correlation((*d)(m, k), bath.correlation_length);
  }

  // G(omega) = gamma(omega) * correlation, so one decomposition serves every bin.
  Eigen::VectorXd modes = Eigen::VectorXd::Ones(n);
  Eigen::MatrixXd mode_vectors = Eigen::MatrixXd::Identity(n, n);
  if (bath.correlation_length > 0.0) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(correlation);
    modes = solver.eigenvalues();
    mode_vectors = solver.eigenvectors();
    for (Eigen::Index k = 0; k < n; ++k) {
      auto col = mode_vectors.col(k);
      for (Eigen::Index i = 0; i < n; ++i)
        if (std::abs(col(i)) > 1e-12) {
          if (col(i) < 0) col = -col;
          break;
        }
    }
  }
  const double max_abs = correlation.cwiseAbs().maxCoeff();

  ClampReport local;
  std::vector<JumpChannel> channels;
  for (const auto& bin : es.bins) {
    const double gamma = bath_rate(bin.omega, bath);
    if (gamma == 0.0) continue;

    std::vector<Eigen::MatrixXcd> site_ops;
    site_ops.reserve(static_cast<std::size_t>(n));
    for (Eigen::Index m = 0; m < n; ++m) site_ops.push_back(site_bin_operator(es, bin, m));

    for (Eigen::Index k = 0; k < n; ++k) {
      double g = gamma * modes(k);
      const double ratio = modes(k) / max_abs;
      local.most_negative_ratio = std::min(local.most_negative_ratio, ratio);
      if (ratio < -kRateClampTolerance) throw NonPositiveRatesError(bin.omega, g);
      if (g < 0.0) {
        ++local.clamped_eigenvalues;
        g = 0.0;
      }
      if (g == 0.0) continue;
      JumpChannel ch;
      ch.op = Eigen::MatrixXcd::Zero(n + 1, n + 1);
      for (Eigen::Index m = 0; m < n; ++m)
        if (mode_vectors(m, k) != 0.0) ch.op += mode_vectors(m, k) * site_ops[static_cast<std::size_t>(m)];
      ch.rate = g;
      ch.kind = ChannelKind::Relaxation;
      ch.omega = bin.omega;
      channels.push_back(std::move(ch));
    }
  }
  if (report) *report = local;
  return channels;
}

std::vector<JumpChannel> build_pure_dephasing_generator(const SiteNetwork& net, const BathSpec& bath) {
  const auto n = static_cast<Eigen::Index>(net.n_sites());
  std::vector<JumpChannel> channels;
  for (Eigen::Index m = 1; m <= n; ++m) {
    JumpChannel ch;
    ch.op = Eigen::MatrixXcd::Zero(n + 1, n + 1);
    ch.op(m, m) = 1.0;
    ch.rate = bath.dephasing_rate;
    ch.kind = ChannelKind::SiteDephasing;
    ch.site = static_cast<int>(m);
    channels.push_back(std::move(ch));
  }
  return channels;
}

std::vector<JumpChannel> build_loss_generator(const SiteNetwork& net) {
  const auto n = static_cast<Eigen::Index>(net.n_sites());
  std::vector<JumpChannel> channels;
  auto lowering = [n](Eigen::Index m) {
    Eigen::MatrixXcd op = Eigen::MatrixXcd::Zero(n + 1, n + 1);
    op(0, m) = 1.0;
    return op;
  };
  for (Eigen::Index m = 1; m <= n; ++m) {
    const auto i = static_cast<std::size_t>(m - 1);
    if (net.dissipation_rates[i] > 0.0)
      channels.push_back({lowering(m), net.dissipation_rates[i], ChannelKind::Dissipation, 0.0, static_cast<int>(m)});
    if (net.trap_rates[i] > 0.0)
      channels.push_back({lowering(m), net.trap_rates[i], ChannelKind::Trapping, 0.0, static_cast<int>(m)});
  }
  return channels;
}

}  // namespace eyield
