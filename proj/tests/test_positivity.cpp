#include <random>

#include "bifree/positivity.hpp"
#include "doctest.h"
#include "support.hpp"

using namespace bifree;
using testutil::make_sys;

namespace {

Eigen::MatrixXcd random_psd(int n, std::mt19937_64& rng) {
  const Eigen::MatrixXcd x = testutil::rand_matrix(n, rng);
  return x.adjoint() * x;
}

double min_eig(const Eigen::MatrixXcd& m) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(
      (m + m.adjoint()) / 2.0);
  return es.eigenvalues()(0);
}

}  // namespace

TEST_CASE("hadamard examples") {
  Eigen::MatrixXcd d = Eigen::MatrixXcd::Identity(2, 2);
  Eigen::MatrixXcd b(2, 2);
  b << 2.0, 1.0, 1.0, 2.0;
  const Eigen::MatrixXcd h = hadamard(d, b);
  CHECK(h(0, 0) == Scalar(2.0));
  CHECK(h(0, 1) == Scalar(0.0));
  CHECK(h(1, 0) == Scalar(0.0));
  CHECK(h(1, 1) == Scalar(2.0));

  std::mt19937_64 rng(41);
  const Eigen::MatrixXcd x = testutil::rand_matrix(3, rng);
  const Eigen::MatrixXcd y = testutil::rand_matrix(3, rng);
  CHECK((hadamard(x, y) - hadamard(y, x)).cwiseAbs().maxCoeff() == 0.0);

  CHECK_THROWS_AS(hadamard(x, testutil::rand_matrix(4, rng)),
                  std::invalid_argument);
}

TEST_CASE("hadamard preserves positive semidefiniteness") {
  std::mt19937_64 rng(43);
  std::uniform_int_distribution<int> size(1, 8);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = size(rng);
    const Eigen::MatrixXcd a = random_psd(n, rng);
    const Eigen::MatrixXcd b = random_psd(n, rng);
    CHECK(min_eig(hadamard(a, b)) >= -1e-10);
  }
}

TEST_CASE("positive word basis is sorted and complete") {
  auto sys = make_sys(testutil::two_schmidt_components(45));
  const auto basis = positive_word_basis(sys, 2);
  CHECK(basis.size() == 1 + 4 + 16);
  WordLess less;
  for (std::size_t k = 1; k < basis.size(); ++k) {
    CHECK(less(basis[k - 1], basis[k]));
    CHECK(basis[k].is_positive());
  }
  CHECK_THROWS_AS(positive_word_basis(sys, 3, 20), CapExceeded);
}

TEST_CASE("gram over the unit basis") {
  auto sys = make_sys(testutil::two_schmidt_components(47));
  const auto rep = build_gram(sys, {Word()}, 1e-8);
  REQUIRE(rep.matrix.rows() == 1);
  CHECK(std::abs(rep.matrix(0, 0) - Scalar(1.0)) <= 1e-12);
  CHECK(rep.psd);
}

TEST_CASE("gram of Schmidt components is PSD") {
  auto sys = make_sys(testutil::two_schmidt_components(49));
  const auto basis = positive_word_basis(sys, 2);
  const auto rep = build_gram(sys, basis, 1e-8);
  CHECK(rep.psd);
  CHECK(rep.min_eig >= -1e-8);
  CHECK(rep.hermitian_defect <= 1e-9);
  CHECK_FALSE(rep.witness.has_value());
}

TEST_CASE("gram entries do not depend on the worker count") {
  auto sys1 = make_sys(testutil::two_schmidt_components(51));
  auto sys2 = make_sys(testutil::two_schmidt_components(51));
  const auto basis = positive_word_basis(sys1, 2);
  const auto serial = build_gram(sys1, basis, 1e-8, 1);
  const auto parallel = build_gram(sys2, basis, 1e-8, 4);
  CHECK((serial.matrix - parallel.matrix).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("quadratic form matches direct evaluation") {
  auto sys = make_sys(testutil::two_schmidt_components(53));
  const auto basis = positive_word_basis(sys, 2);
  const auto rep = build_gram(sys, basis, 1e-8);
  std::mt19937_64 rng(531);
  for (int trial = 0; trial < 20; ++trial) {
    Eigen::VectorXcd c(static_cast<Eigen::Index>(basis.size()));
    NCPoly a;
    for (std::size_t k = 0; k < basis.size(); ++k) {
      c(static_cast<Eigen::Index>(k)) = testutil::rand_scalar(rng);
      a.add_term(basis[k], c(static_cast<Eigen::Index>(k)));
    }
    const Scalar via_gram = (c.adjoint() * rep.matrix * c)(0);
    const Scalar direct = sys.evaluate_tau(theta(a) * a);
    CHECK(std::abs(via_gram - direct) <= 1e-9);
  }
}

TEST_CASE("pattern blocks factor the centered Gram and stay PSD") {
  auto sys = make_sys(testutil::two_schmidt_components(55));
  const auto basis = positive_word_basis(sys, 2);
  const auto blocks = pattern_blocks(sys, basis);
  CHECK(!blocks.empty());
  for (const auto& block : blocks) {
    REQUIRE(block.level_grams.size() == block.pattern.size());
    for (const auto& level : block.level_grams)
      CHECK(min_eig(level) >= -1e-10);
    CHECK(min_eig(block.schur_product) >= -1e-9);
    // The Schur product IS the centered-term Gram of this pattern.
    for (std::size_t k = 1; k < block.pattern.size(); ++k)
      CHECK(block.pattern[k - 1] != block.pattern[k]);
  }
}

TEST_CASE("centered terms with different patterns are Gram-orthogonal") {
  auto sys = make_sys(testutil::two_schmidt_components(57));
  std::mt19937_64 rng(571);
  const std::vector<std::vector<std::int32_t>> patterns{
      {}, {0}, {1}, {0, 1}, {1, 0}, {0, 1, 0}, {1, 0, 1}};
  std::vector<CenteredTerm> terms;
  for (const auto& pat : patterns)
    terms.push_back(testutil::random_centered_term(sys, pat, rng));
  for (std::size_t s = 0; s < terms.size(); ++s) {
    for (std::size_t t = 0; t < terms.size(); ++t) {
      if (s == t) continue;
      const Scalar v = sys.pair_eq1(terms[s], terms[t]);
      CHECK(v.real() == 0.0);
      CHECK(v.imag() == 0.0);
    }
  }
}

TEST_CASE("verify_theorem passes on Schmidt components") {
  auto sys = make_sys(testutil::two_schmidt_components(59));
  const auto rep = verify_theorem(sys, 2, 100, 1e-8, 1e-9, 42);
  CHECK(rep.hypothesis_ok);
  CHECK(rep.gram_ok);
  CHECK(rep.random_ok);
  CHECK(rep.verdict == TheoremVerdict::kPass);
  CHECK(rep.min_quadratic_real >= -1e-8);
  CHECK(rep.max_quadratic_imag <= 1e-9);
}

TEST_CASE("verify_theorem on a single component reduces to its RP check") {
  std::mt19937_64 rng(61);
  auto sys = make_sys({testutil::random_schmidt_model(2, 2, rng)});
  const auto rep = verify_theorem(sys, 2, 50, 1e-8, 1e-9, 7);
  REQUIRE(rep.components.size() == 1);
  CHECK(rep.verdict == TheoremVerdict::kPass);
  // Same basis, same moments: the product Gram equals the component Gram.
  CHECK((rep.gram.matrix - rep.components[0].matrix).cwiseAbs().maxCoeff() <=
        1e-9);
}

TEST_CASE("a non-RP component is flagged as hypothesis failure") {
  std::mt19937_64 rng(63);
  std::vector<MatrixModel> models;
  models.push_back(testutil::random_schmidt_model(2, 2, rng));
  models.push_back(testutil::non_rp_model());
  auto sys = make_sys(models);
  const auto rep = verify_theorem(sys, 2, 50, 1e-8, 1e-9, 11);
  CHECK_FALSE(rep.hypothesis_ok);
  CHECK(rep.verdict == TheoremVerdict::kHypothesisFailure);
  // The product Gram exhibits the violation too.
  CHECK_FALSE(rep.gram_ok);
  CHECK(rep.gram.min_eig < -1e-6);
  REQUIRE(rep.gram.witness.has_value());
  const Eigen::VectorXcd& w = *rep.gram.witness;
  const Scalar quad = (w.adjoint() * rep.gram.matrix * w)(0);
  CHECK(quad.real() < -1e-6);
  // Re-confirm the witness by direct evaluation of tau(theta(a) a).
  NCPoly a;
  for (std::size_t k = 0; k < rep.gram.basis.size(); ++k)
    a.add_term(rep.gram.basis[k], w(static_cast<Eigen::Index>(k)));
  const Scalar direct = sys.evaluate_tau(theta(a) * a);
  CHECK(std::abs(direct - quad) <= 1e-9);
  CHECK(direct.real() < -1e-6);
}

TEST_CASE("randomized theorem property: RP components give PSD products") {
  std::mt19937_64 rng(65);
  for (int trial = 0; trial < 5; ++trial) {
    const int n_comp = 2 + static_cast<int>(rng() % 2);
    std::vector<MatrixModel> models;
    for (int i = 0; i < n_comp; ++i) {
      const int d = 2 + static_cast<int>(rng() % 2);
      models.push_back(testutil::random_schmidt_model(d, 2, rng));
    }
    auto sys = make_sys(models);
    const auto rep = verify_theorem(sys, 2, 20, 1e-8, 1e-9, rng());
    CHECK(rep.hypothesis_ok);
    CHECK(rep.verdict == TheoremVerdict::kPass);
  }
}
