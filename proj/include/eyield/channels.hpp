#pragma once

#include <Eigen/Dense>
#include <string_view>
#include <vector>

#include "eyield/bath.hpp"
#include "eyield/eigensystem.hpp"
#include "eyield/network.hpp"

namespace eyield {

enum class ChannelKind { Relaxation, SiteDephasing, Dissipation, Trapping };

std::string_view to_string(ChannelKind kind);

/// One Lindblad term g (A rho A^+ - {A^+ A, rho} / 2) on the (N+1)-dim space.
struct JumpChannel {
  Eigen::MatrixXcd op;
  double rate = 0.0;  // ps^-1, >= 0
  ChannelKind kind = ChannelKind::Relaxation;
  double omega = 0.0;  // Relaxation: bin frequency, angular ps^-1
  int site = 0;        // 1-based site for the site-local kinds, 0 otherwise
};

/// Relative tolerance below zero under which correlated-rate eigenvalues are
/// clamped to zero instead of rejected.
inline constexpr double kRateClampTolerance = 1e-10;

/// Records whether the correlated-rate positivity repair was needed.
struct ClampReport {
  int clamped_eigenvalues = 0;
  double most_negative_ratio = 0.0;  // min eigenvalue / max |G| over all bins
};

/// Secular weak-coupling generator. For each frequency bin the correlated
/// rate matrix G_mn = J0(d_mn / lambda_B) gamma(omega) is diagonalized; every
/// positive eigenvalue g_k with eigenvector u_k yields the channel
/// sum_m u_k(m) A_m(omega) with rate g_k. Throws NonPositiveRatesError when
/// an eigenvalue falls below -kRateClampTolerance * max|G|, and ConfigError
/// when lambda_B > 0 but the network carries no geometry.
std::vector<JumpChannel> build_secular_generator(const EigenSystem& es, const SiteNetwork& net,
                                                 const BathSpec& bath, ClampReport* report = nullptr);

/// Site-basis dephasing: one projector |k><k| per site at the common rate.
std::vector<JumpChannel> build_pure_dephasing_generator(const SiteNetwork& net, const BathSpec& bath);

/// sigma_m^- channels for dissipation (Gamma_m > 0) and trapping (kappa_m > 0).
std::vector<JumpChannel> build_loss_generator(const SiteNetwork& net);

/// A_m(omega) for one bin, embedded in the (N+1)-dim space.
Eigen::MatrixXcd site_bin_operator(const EigenSystem& es, const FrequencyBin& bin, Eigen::Index site);

}  // namespace eyield
