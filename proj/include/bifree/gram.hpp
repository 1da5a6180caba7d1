#pragma once

#include <Eigen/Dense>
#include <optional>
#include <vector>

#include "bifree/config.hpp"
#include "bifree/word.hpp"

namespace bifree {

/// Outcome of certifying a Gram matrix G_{kl} = tau(theta(w_k) w_l).
///
/// The verdict is positive iff the matrix is Hermitian within tol and the
/// smallest eigenvalue of its Hermitian part is >= -tol. On failure,
/// `witness` holds a unit coefficient vector w over the basis whose
/// quadratic form w* G w is either negative or has a nonzero imaginary
/// part, so the failure can be re-checked by direct evaluation.
struct GramReport {
  std::vector<Word> basis;
  Eigen::MatrixXcd matrix;
  double min_eig = 0.0;
  double hermitian_defect = 0.0;
  bool psd = false;
  std::optional<Eigen::VectorXcd> witness;
};

GramReport certify_gram(std::vector<Word> basis, Eigen::MatrixXcd gram,
                        double tol);

// Entrywise (Schur) product. Throws std::invalid_argument on shape mismatch.
Eigen::MatrixXcd hadamard(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b);

}  // namespace bifree
