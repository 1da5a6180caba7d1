#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <span>
#include <vector>

#include "bifree/config.hpp"
#include "bifree/gram.hpp"

namespace bifree {

using LocalWord = std::vector<std::int32_t>;

struct LocalWordLess {
  bool operator()(const LocalWord& a, const LocalWord& b) const {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
  }
};

/// The per-component moment data the product evaluator consumes:
/// tau_i(theta(a) b) on monomials, with a the product of the generators
/// listed in `neg` and b the product listed in `pos`. Linearity is the
/// caller's job. moment({}, {}) must be 1.
class MomentOracle {
 public:
  virtual ~MomentOracle() = default;

  virtual int generator_count() const = 0;
  virtual Scalar moment(const LocalWord& neg, const LocalWord& pos) const = 0;

  Scalar unit() const { return moment({}, {}); }
  // tau_i of a positive-face monomial.
  Scalar mean(const LocalWord& w) const { return moment({}, w); }
};

Eigen::MatrixXcd kron(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b);

/// Finite-dimensional realization of one component on C^d (x) C^d: a
/// positive-face generator g acts as g (x) I, its reflection theta(g) as
/// I (x) conj(g). The two legs commute, theta is anti-linear, multiplicative
/// and squares to the identity, and tau is the vector state of `state`.
///
/// With the state reshaped row-major into the d x d matrix C, moments reduce
/// to d x d arithmetic: tau(theta(a) b) = tr(C^* b C a^*).
class MatrixModel final : public MomentOracle {
 public:
  // `state` has length dim^2 (entry k*dim+l is the e_k (x) e_l amplitude)
  // and is normalized on construction; a zero state is rejected.
  MatrixModel(std::vector<Eigen::MatrixXcd> generators, Eigen::VectorXcd state);

  int dim() const { return dim_; }
  int generator_count() const override {
    return static_cast<int>(generators_.size());
  }
  const Eigen::MatrixXcd& generator(int g) const;
  const Eigen::VectorXcd& state() const { return state_; }
  const Eigen::MatrixXcd& state_matrix() const { return state_matrix_; }

  Scalar moment(const LocalWord& neg, const LocalWord& pos) const override;

  // Product of the listed generators, in order; the empty word gives I.
  Eigen::MatrixXcd word_matrix(const LocalWord& w) const;

  // Representation on C^{d^2} of a positive-face element and its reflection.
  Eigen::MatrixXcd positive_action(const Eigen::MatrixXcd& g) const;
  Eigen::MatrixXcd reflected_action(const Eigen::MatrixXcd& g) const;

 private:
  int dim_;
  std::vector<Eigen::MatrixXcd> generators_;
  Eigen::VectorXcd state_;
  Eigen::MatrixXcd state_matrix_;
};

// xi = sum_k sqrt(p_k) e_k (x) e_k with p the normalized weights. Models
// carrying such a state are reflection positive for every generator set.
Eigen::VectorXcd schmidt_state(std::span<const double> weights);

std::vector<LocalWord> local_word_basis(int generator_count, int max_len,
                                        std::size_t cap = kMaxGramBasis);

// Builds the Gram matrix G_{kl} = tau_i(theta(w_k) w_l) over all
// positive-face local words of length <= max_len and certifies it.
// `algebra_id` only labels the basis words in the report.
GramReport check_component_rp(const MomentOracle& oracle, int max_len,
                              double tol, std::int32_t algebra_id = 0,
                              std::size_t basis_cap = kMaxGramBasis);

}  // namespace bifree
