#pragma once

#include <Eigen/Dense>
#include <json.hpp>
#include <vector>

#include "eyield/bath.hpp"
#include "eyield/channels.hpp"
#include "eyield/network.hpp"

namespace eyield {

// Vectorization is column-major throughout: vec(rho)[i + d*j] = rho(i, j).

Eigen::VectorXcd vectorize(const Eigen::MatrixXcd& rho);
Eigen::MatrixXcd unvectorize(const Eigen::VectorXcd& v, Eigen::Index dim);

struct ChannelSummary {
  ChannelKind kind;
  double rate;
  double omega;
  int site;
  double operator_norm;  // Frobenius
};

/// Superoperator of drho/dt = -i[H, rho] + sum_k g_k D[A_k](rho) on
/// column-vectorized density matrices.
class Liouvillian {
 public:
  Liouvillian(Eigen::MatrixXcd matrix, Eigen::Index system_dim, std::vector<ChannelSummary> manifest);

  Eigen::Index dimension() const { return matrix_.rows(); }
  Eigen::Index system_dimension() const { return system_dim_; }
  const Eigen::MatrixXcd& matrix() const { return matrix_; }
  const std::vector<ChannelSummary>& manifest() const { return manifest_; }

  Eigen::MatrixXcd apply(const Eigen::MatrixXcd& rho) const;

  /// max |(t^T L)_j| for the trace functional t = vec(identity).
  double trace_preservation_error() const;

 private:
  Eigen::MatrixXcd matrix_;
  Eigen::Index system_dim_;
  std::vector<ChannelSummary> manifest_;
};

/// Throws DomainError on dimension mismatch or a negative rate.
Liouvillian assemble_liouvillian(const Eigen::MatrixXcd& hamiltonian, const std::vector<JumpChannel>& channels);

struct ModelOptions {
  bool include_loss = true;
  bool include_bath = true;
};

/// Hamiltonian + bath generator selected by bath.model + loss channels.
Liouvillian build_liouvillian(const SiteNetwork& net, const BathSpec& bath, const ModelOptions& options = {},
                              ClampReport* clamp = nullptr);

nlohmann::json manifest_to_json(const Liouvillian& liouvillian);

}  // namespace eyield
