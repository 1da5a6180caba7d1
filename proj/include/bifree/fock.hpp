#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <map>
#include <vector>

#include "bifree/config.hpp"
#include "bifree/matrix_model.hpp"
#include "bifree/ncpoly.hpp"

namespace bifree {

/// Truncated free product of the component spaces H_i = C^{d_i} (x) C^{d_i}:
/// the vacuum plus all alternating tensors H_{i_1}° (x) ... (x) H_{i_n}° with
/// n <= depth and i_1 != i_2 != ... != i_n, where H_i° is the orthogonal
/// complement of the component state xi_i.
///
/// An unreflected letter g acts as the left free-product action of g (x) I
/// on the first tensor slot; a reflected letter theta(g) acts as the right
/// free-product action of I (x) conj(g) on the last slot. The vacuum
/// expectation of these actions is an implementation of tau that shares no
/// code with the centered-decomposition evaluator, which is what makes it
/// useful as an oracle. Truncation is exact for words of length <= depth:
/// each letter changes the tensor length by at most one.
class FreeProductSpace {
 public:
  FreeProductSpace(std::vector<MatrixModel> models, int depth,
                   std::size_t dim_cap = kMaxFockDim);

  int depth() const { return depth_; }
  Eigen::Index dimension() const { return static_cast<Eigen::Index>(slots_.size()); }
  std::size_t component_count() const { return components_.size(); }

  Eigen::VectorXcd vacuum() const;

  // Applies one letter to a state vector. Throws CapExceeded if a creation
  // with non-negligible amplitude would exceed the truncation depth.
  Eigen::VectorXcd act(const Letter& letter, const Eigen::VectorXcd& v) const;

  // Vacuum expectation sum_terms coeff * <vacuum, (letters applied
  // right-to-left) vacuum>. Every word must have length <= depth.
  Scalar tau(const NCPoly& p) const;

 private:
  // (component, excitation) per tensor slot, leftmost first.
  using Slots = std::vector<std::pair<std::int32_t, std::int32_t>>;

  struct Component {
    int excitations = 0;  // dim(H_i°) = d_i^2 - 1
    // Generator actions in the orthonormal basis [xi, f_1, ..., f_m]:
    // row/column 0 is the xi component.
    std::vector<Eigen::MatrixXcd> pos_ops;
    std::vector<Eigen::MatrixXcd> neg_ops;
  };

  Eigen::Index index_of(const Slots& s) const;

  std::vector<Component> components_;
  int depth_;
  std::vector<Slots> slots_;
  std::map<Slots, Eigen::Index> index_;
};

// Builds a space deep enough for every word of p (truncation provably
// exact) and returns its vacuum expectation of p.
Scalar oracle_tau(const std::vector<MatrixModel>& models, const NCPoly& p);

}  // namespace bifree
