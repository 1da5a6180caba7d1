#pragma once

// Shared helpers for the test suites: deterministic random models, words,
// polynomials, and the crafted reflection-positivity violator.

#include <memory>
#include <random>
#include <vector>

#include "bifree/bifree.hpp"

namespace testutil {

using namespace bifree;

inline Scalar rand_scalar(std::mt19937_64& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  const double re = g(rng);
  const double im = g(rng);
  return {re, im};
}

inline Eigen::MatrixXcd rand_matrix(int d, std::mt19937_64& rng,
                                    double scale = 1.0) {
  Eigen::MatrixXcd m(d, d);
  for (int r = 0; r < d; ++r)
    for (int c = 0; c < d; ++c) m(r, c) = scale * rand_scalar(rng);
  return m;
}

inline MatrixModel random_schmidt_model(int d, int n_gen,
                                        std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.1, 1.0);
  std::vector<double> weights(static_cast<std::size_t>(d));
  for (double& w : weights) w = u(rng);
  std::vector<Eigen::MatrixXcd> gens;
  for (int g = 0; g < n_gen; ++g)
    gens.push_back(rand_matrix(d, rng, 1.0 / std::sqrt(d)));
  return MatrixModel(std::move(gens), schmidt_state(weights));
}

inline MatrixModel random_vector_model(int d, int n_gen,
                                       std::mt19937_64& rng) {
  std::vector<Eigen::MatrixXcd> gens;
  for (int g = 0; g < n_gen; ++g)
    gens.push_back(rand_matrix(d, rng, 1.0 / std::sqrt(d)));
  Eigen::VectorXcd xi(d * d);
  for (Eigen::Index k = 0; k < xi.size(); ++k) xi(k) = rand_scalar(rng);
  return MatrixModel(std::move(gens), std::move(xi));
}

// State (e_0 (x) e_0 - e_1 (x) e_1)/sqrt(2) with the single generator E_01:
// tau(theta(g) g) = -1/2, a deterministic reflection-positivity violator.
inline MatrixModel non_rp_model() {
  Eigen::VectorXcd xi(4);
  xi << 1.0, 0.0, 0.0, -1.0;
  Eigen::MatrixXcd g = Eigen::MatrixXcd::Zero(2, 2);
  g(0, 1) = 1.0;
  return MatrixModel({g}, xi);
}

inline BiFreeSystem make_sys(std::vector<MatrixModel> models,
                             SystemConfig cfg = {}) {
  std::vector<std::shared_ptr<const MomentOracle>> oracles;
  for (MatrixModel& m : models)
    oracles.push_back(std::make_shared<const MatrixModel>(std::move(m)));
  return BiFreeSystem(std::move(oracles), cfg);
}

inline std::vector<MatrixModel> two_schmidt_components(std::uint64_t seed,
                                                       int d = 2,
                                                       int n_gen = 2) {
  std::mt19937_64 rng(seed);
  std::vector<MatrixModel> models;
  models.push_back(random_schmidt_model(d, n_gen, rng));
  models.push_back(random_schmidt_model(d, n_gen, rng));
  return models;
}

inline Word random_word(const std::vector<MatrixModel>& models, int len,
                        bool mixed_faces, std::mt19937_64& rng) {
  std::uniform_int_distribution<std::int32_t> comp(
      0, static_cast<std::int32_t>(models.size()) - 1);
  std::uniform_int_distribution<int> face(0, 1);
  std::vector<Letter> letters;
  for (int k = 0; k < len; ++k) {
    const std::int32_t i = comp(rng);
    std::uniform_int_distribution<std::int32_t> gen(
        0, models[static_cast<std::size_t>(i)].generator_count() - 1);
    const std::int32_t g = gen(rng);
    const bool reflected = mixed_faces && face(rng) == 1;
    letters.push_back(reflected ? neg_letter(i, g) : pos_letter(i, g));
  }
  return Word(std::move(letters));
}

inline NCPoly random_poly(const std::vector<MatrixModel>& models, int terms,
                          int max_len, bool mixed_faces,
                          std::mt19937_64& rng) {
  std::uniform_int_distribution<int> len(0, max_len);
  NCPoly p;
  for (int t = 0; t < terms; ++t)
    p.add_term(random_word(models, len(rng), mixed_faces, rng),
               rand_scalar(rng));
  return p;
}

inline NCPoly to_poly(const LocalElement& x) {
  NCPoly p;
  for (const auto& [lw, c] : x.coeffs) {
    std::vector<Letter> letters;
    letters.reserve(lw.size());
    for (std::int32_t g : lw) letters.push_back(pos_letter(x.algebra_id, g));
    p.add_term(Word(std::move(letters)), c);
  }
  return p;
}

inline NCPoly to_poly(const CenteredTerm& t) {
  NCPoly p = NCPoly::monomial(Word(), t.coefficient);
  for (const LocalElement& f : t.factors) p = p * to_poly(f);
  return p;
}

inline NCPoly to_poly(const std::vector<CenteredTerm>& terms) {
  NCPoly p;
  for (const CenteredTerm& t : terms) p += to_poly(t);
  return p;
}

// Random local element with tau_i = 0, drawn over words of length 1 and 2.
inline LocalElement random_centered_local(const BiFreeSystem& sys,
                                          std::int32_t algebra,
                                          std::mt19937_64& rng) {
  const int n = sys.component(algebra).generator_count();
  std::uniform_int_distribution<std::int32_t> gen(0, n - 1);
  LocalElement x;
  x.algebra_id = algebra;
  for (std::int32_t g = 0; g < n; ++g) x.add({g}, rand_scalar(rng));
  x.add({gen(rng), gen(rng)}, rand_scalar(rng));
  x.add({}, -sys.local_mean(x));
  return x;
}

inline CenteredTerm random_centered_term(const BiFreeSystem& sys,
                                         const std::vector<std::int32_t>& pat,
                                         std::mt19937_64& rng) {
  CenteredTerm t;
  t.coefficient = rand_scalar(rng);
  for (std::int32_t algebra : pat)
    t.factors.push_back(random_centered_local(sys, algebra, rng));
  return t;
}

}  // namespace testutil
