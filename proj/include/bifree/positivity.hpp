#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <vector>

#include "bifree/gram.hpp"
#include "bifree/product.hpp"

namespace bifree {

// All positive-face words of length <= max_len over every component's
// generators, sorted by (length, component sequence, generator sequence).
std::vector<Word> positive_word_basis(const BiFreeSystem& sys, int max_len,
                                      std::size_t cap = kMaxGramBasis);

// G_{kl} = tau(theta(w_k) w_l) over the given positive-face basis, certified
// at tolerance tol. Entries are independent and are computed with `threads`
// workers; the result does not depend on the thread count.
GramReport build_gram(const BiFreeSystem& sys, const std::vector<Word>& basis,
                      double tol, int threads = 1);

/// The per-pattern factorization behind the product's positivity: for one
/// alternation pattern, level_grams[m] is the component Gram of the m-th
/// factors of all centered terms with that pattern, and `schur_product` is
/// their entrywise product. Each component Gram of a reflection-positive
/// component is PSD, hence so is the Schur product.
struct PatternBlock {
  std::vector<std::int32_t> pattern;
  std::vector<Eigen::MatrixXcd> level_grams;
  Eigen::MatrixXcd schur_product;
};

// Centered terms of all basis words, grouped by alternation pattern. The
// unit pattern (no factors) is omitted.
std::vector<PatternBlock> pattern_blocks(const BiFreeSystem& sys,
                                         const std::vector<Word>& basis);

enum class TheoremVerdict { kPass, kTheoremFailure, kHypothesisFailure };

struct TheoremReport {
  std::vector<GramReport> components;  // per-component RP checks
  bool hypothesis_ok = false;

  GramReport gram;  // product Gram over the positive word basis
  bool gram_ok = false;

  int trials = 0;
  double min_quadratic_real = 0.0;  // min over trials of Re tau(theta(a) a)
  double max_quadratic_imag = 0.0;  // max over trials of |Im tau(theta(a) a)|
  bool random_ok = false;

  TheoremVerdict verdict = TheoremVerdict::kHypothesisFailure;
};

// Checks every component's reflection positivity (the hypothesis), then the
// product Gram over all positive words of length <= max_len, then `trials`
// random elements a of the positive face: tau(theta(a) a) must be real and
// nonnegative within tolerance. The Gram and random checks run even when
// the hypothesis fails, so a failing component shows up as an explicit
// product-level witness.
TheoremReport verify_theorem(const BiFreeSystem& sys, int max_len, int trials,
                             double psd_tol, double moment_tol,
                             std::uint64_t seed, int threads = 1);

}  // namespace bifree
