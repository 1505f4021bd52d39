#include "eyield/liouvillian.hpp"

#include <complex>
#include <string>

#include "eyield/eigensystem.hpp"
#include "eyield/error.hpp"

namespace eyield {

using cd = std::complex<double>;

Eigen::VectorXcd vectorize(const Eigen::MatrixXcd& rho) {
  return Eigen::Map<const Eigen::VectorXcd>(rho.data(), rho.size());
}

Eigen::MatrixXcd unvectorize(const Eigen::VectorXcd& v, Eigen::Index dim) {
  if (v.size() != dim * dim) throw DomainError("unvectorize: size mismatch");
  return Eigen::Map<const Eigen::MatrixXcd>(v.data(), dim, dim);
}

Liouvillian::Liouvillian(Eigen::MatrixXcd matrix, Eigen::Index system_dim, std::vector<ChannelSummary> manifest)
    : matrix_(std::move(matrix)), system_dim_(system_dim), manifest_(std::move(manifest)) {
  if (matrix_.rows() != system_dim_ * system_dim_ || matrix_.cols() != matrix_.rows())
    throw DomainError("Liouvillian: matrix dimension does not match system dimension");
}

Eigen::MatrixXcd Liouvillian::apply(const Eigen::MatrixXcd& rho) const {
  return unvectorize(matrix_ * vectorize(rho), system_dim_);
}

double Liouvillian::trace_preservation_error() const {
  Eigen::RowVectorXcd acc = Eigen::RowVectorXcd::Zero(matrix_.cols());
  for (Eigen::Index i = 0; i < system_dim_; ++i) acc += matrix_.row(i + system_dim_ * i);
  return acc.cwiseAbs().maxCoeff();
}

namespace {

// out += scale * (a (x) b); used with vec(A X B) = (B^T (x) A) vec(X).
void add_kron(Eigen::MatrixXcd& out, const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b, cd scale) {
  const auto d = b.rows();
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      const cd aij = a(i, j);
      if (aij == cd(0.0)) continue;
      out.block(i * d, j * d, d, d).noalias() += (scale * aij) * b;
    }
}

}  // namespace

Liouvillian assemble_liouvillian(const Eigen::MatrixXcd& hamiltonian, const std::vector<JumpChannel>& channels) {
  const auto d = hamiltonian.rows();
  if (hamiltonian.cols() != d) throw DomainError("assemble_liouvillian: Hamiltonian is not square");
  const Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(d, d);
  Eigen::MatrixXcd l = Eigen::MatrixXcd::Zero(d * d, d * d);
  const cd i_unit(0.0, 1.0);

  // -i (H rho - rho H): vec(H rho) = (I (x) H) vec(rho), vec(rho H) = (H^T (x) I) vec(rho).
  add_kron(l, id, hamiltonian, -i_unit);
  add_kron(l, hamiltonian.transpose(), id, i_unit);

  std::vector<ChannelSummary> manifest;
  manifest.reserve(channels.size());
  for (const auto& ch : channels) {
    if (ch.op.rows() != d || ch.op.cols() != d)
      throw DomainError("assemble_liouvillian: channel operator dimension mismatch");
    if (!(ch.rate >= 0.0)) throw DomainError("assemble_liouvillian: negative channel rate");
    manifest.push_back({ch.kind, ch.rate, ch.omega, ch.site, ch.op.norm()});
    if (ch.rate == 0.0) continue;
    const Eigen::MatrixXcd ada = ch.op.adjoint() * ch.op;
    add_kron(l, ch.op.conjugate(), ch.op, ch.rate);
    add_kron(l, id, ada, -0.5 * ch.rate);
    add_kron(l, ada.transpose(), id, -0.5 * ch.rate);
  }
  return Liouvillian(std::move(l), d, std::move(manifest));
}

Liouvillian build_liouvillian(const SiteNetwork& net, const BathSpec& bath, const ModelOptions& options,
                              ClampReport* clamp) {
  validate(net);
  validate(bath);
  const Eigen::MatrixXcd h = build_hamiltonian(net);
  std::vector<JumpChannel> channels;
  if (options.include_bath) {
    if (bath.model == BathModel::SecularWeakCoupling) {
      const auto es = diagonalize_single_excitation(h);
      channels = build_secular_generator(es, net, bath, clamp);
    } else {
      channels = build_pure_dephasing_generator(net, bath);
    }
  }
  if (options.include_loss) {
    auto loss = build_loss_generator(net);
    channels.insert(channels.end(), std::make_move_iterator(loss.begin()), std::make_move_iterator(loss.end()));
  }
  return assemble_liouvillian(h, channels);
}

nlohmann::json manifest_to_json(const Liouvillian& liouvillian) {
  nlohmann::json channels = nlohmann::json::array();
  for (const auto& c : liouvillian.manifest()) {
    nlohmann::json entry{{"kind", std::string(to_string(c.kind))}, {"rate_per_ps", c.rate},
                         {"operator_norm", c.operator_norm}};
    if (c.kind == ChannelKind::Relaxation) entry["omega_per_ps"] = c.omega;
    if (c.site > 0) entry["site"] = c.site;
    channels.push_back(std::move(entry));
  }
  return nlohmann::json{{"system_dimension", liouvillian.system_dimension()},
                        {"superoperator_dimension", liouvillian.dimension()},
                        {"channels", std::move(channels)}};
}

}  // namespace eyield
