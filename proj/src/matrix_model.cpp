#include "bifree/matrix_model.hpp"

#include <cmath>
#include <string>

namespace bifree {

Eigen::MatrixXcd kron(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
  Eigen::MatrixXcd out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

MatrixModel::MatrixModel(std::vector<Eigen::MatrixXcd> generators,
                         Eigen::VectorXcd state)
    : generators_(std::move(generators)), state_(std::move(state)) {
  if (generators_.empty())
    throw ModelError("MatrixModel: at least one generator required");
  dim_ = static_cast<int>(generators_.front().rows());
  if (dim_ < 1) throw ModelError("MatrixModel: dim must be >= 1");
  for (const auto& g : generators_) {
    if (g.rows() != dim_ || g.cols() != dim_)
      throw ModelError("MatrixModel: generator shape mismatch");
    if (!g.allFinite()) throw ModelError("MatrixModel: non-finite generator");
  }
  if (state_.size() != static_cast<Eigen::Index>(dim_) * dim_)
    throw ModelError("MatrixModel: state must have length dim^2");
  if (!state_.allFinite()) throw ModelError("MatrixModel: non-finite state");
  const double n = state_.norm();
  if (n < 1e-14) throw ModelError("MatrixModel: zero state vector");
  state_ /= n;
  state_matrix_ =
      Eigen::Map<const Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic,
                                     Eigen::RowMajor>>(state_.data(), dim_,
                                                       dim_);
}

const Eigen::MatrixXcd& MatrixModel::generator(int g) const {
  if (g < 0 || g >= generator_count())
    throw ModelError("MatrixModel: generator index " + std::to_string(g) +
                     " out of range");
  return generators_[static_cast<std::size_t>(g)];
}

Eigen::MatrixXcd MatrixModel::word_matrix(const LocalWord& w) const {
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Identity(dim_, dim_);
  for (std::int32_t g : w) m *= generator(g);
  return m;
}

Scalar MatrixModel::moment(const LocalWord& neg, const LocalWord& pos) const {
  const Eigen::MatrixXcd a = word_matrix(neg);
  const Eigen::MatrixXcd b = word_matrix(pos);
  return (state_matrix_.adjoint() * b * state_matrix_ * a.adjoint()).trace();
}

Eigen::MatrixXcd MatrixModel::positive_action(const Eigen::MatrixXcd& g) const {
  return kron(g, Eigen::MatrixXcd::Identity(dim_, dim_));
}

Eigen::MatrixXcd MatrixModel::reflected_action(
    const Eigen::MatrixXcd& g) const {
  return kron(Eigen::MatrixXcd::Identity(dim_, dim_), g.conjugate());
}

Eigen::VectorXcd schmidt_state(std::span<const double> weights) {
  if (weights.empty()) throw ModelError("schmidt_state: no weights");
  double sum = 0.0;
  for (double w : weights) {
    if (!(w >= 0.0)) throw ModelError("schmidt_state: negative weight");
    sum += w;
  }
  if (sum <= 0.0) throw ModelError("schmidt_state: all weights zero");
  const auto d = static_cast<Eigen::Index>(weights.size());
  Eigen::VectorXcd xi = Eigen::VectorXcd::Zero(d * d);
  for (Eigen::Index k = 0; k < d; ++k)
    xi(k * d + k) = std::sqrt(weights[static_cast<std::size_t>(k)] / sum);
  return xi;
}

std::vector<LocalWord> local_word_basis(int generator_count, int max_len,
                                        std::size_t cap) {
  std::vector<LocalWord> basis;
  basis.emplace_back();
  for (int len = 1; len <= max_len; ++len) {
    LocalWord w(static_cast<std::size_t>(len), 0);
    while (true) {
      basis.push_back(w);
      if (basis.size() > cap)
        throw CapExceeded("local_word_basis: basis-size cap exceeded");
      int k = len - 1;
      while (k >= 0 && w[static_cast<std::size_t>(k)] == generator_count - 1)
        --k;
      if (k < 0) break;
      ++w[static_cast<std::size_t>(k)];
      for (std::size_t j = static_cast<std::size_t>(k) + 1;
           j < static_cast<std::size_t>(len); ++j)
        w[j] = 0;
    }
  }
  return basis;
}

GramReport check_component_rp(const MomentOracle& oracle, int max_len,
                              double tol, std::int32_t algebra_id,
                              std::size_t basis_cap) {
  if (max_len < 0)
    throw std::invalid_argument("check_component_rp: max_len must be >= 0");
  if (oracle.generator_count() < 1 && max_len > 0)
    throw ModelError("check_component_rp: component has no generators");
  const std::vector<LocalWord> local =
      oracle.generator_count() >= 1
          ? local_word_basis(oracle.generator_count(), max_len, basis_cap)
          : std::vector<LocalWord>{{}};

  const auto n = static_cast<Eigen::Index>(local.size());
  Eigen::MatrixXcd g(n, n);
  for (Eigen::Index k = 0; k < n; ++k)
    for (Eigen::Index l = 0; l < n; ++l)
      g(k, l) = oracle.moment(local[static_cast<std::size_t>(k)],
                              local[static_cast<std::size_t>(l)]);

  std::vector<Word> basis;
  basis.reserve(local.size());
  for (const auto& lw : local) {
    std::vector<Letter> letters;
    letters.reserve(lw.size());
    for (std::int32_t id : lw) letters.push_back(pos_letter(algebra_id, id));
    basis.emplace_back(std::move(letters));
  }
  return certify_gram(std::move(basis), std::move(g), tol);
}

}  // namespace bifree
