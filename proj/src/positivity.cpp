#include "bifree/positivity.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <random>
#include <thread>

namespace bifree {

namespace {

void parallel_for(Eigen::Index n, int threads,
                  const std::function<void(Eigen::Index)>& body) {
  threads = std::max(1, threads);
  if (threads == 1 || n < 2) {
    for (Eigen::Index i = 0; i < n; ++i) body(i);
    return;
  }
  std::vector<std::thread> pool;
  const auto workers = std::min<Eigen::Index>(threads, n);
  for (Eigen::Index w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      for (Eigen::Index i = w; i < n; i += workers) body(i);
    });
  }
  for (auto& t : pool) t.join();
}

}  // namespace

std::vector<Word> positive_word_basis(const BiFreeSystem& sys, int max_len,
                                      std::size_t cap) {
  if (max_len < 0)
    throw std::invalid_argument("positive_word_basis: max_len must be >= 0");
  std::vector<Letter> alphabet;
  for (std::int32_t i = 0; i < static_cast<std::int32_t>(sys.component_count());
       ++i)
    for (std::int32_t g = 0; g < sys.component(i).generator_count(); ++g)
      alphabet.push_back(pos_letter(i, g));

  std::vector<Word> basis;
  basis.emplace_back();
  const std::size_t n = alphabet.size();
  for (int len = 1; len <= max_len && n > 0; ++len) {
    std::vector<std::size_t> odo(static_cast<std::size_t>(len), 0);
    while (true) {
      std::vector<Letter> letters;
      letters.reserve(odo.size());
      for (std::size_t k : odo) letters.push_back(alphabet[k]);
      basis.emplace_back(std::move(letters));
      if (basis.size() > cap)
        throw CapExceeded("positive_word_basis: basis-size cap exceeded");
      int k = len - 1;
      while (k >= 0 && odo[static_cast<std::size_t>(k)] == n - 1) --k;
      if (k < 0) break;
      ++odo[static_cast<std::size_t>(k)];
      for (std::size_t j = static_cast<std::size_t>(k) + 1;
           j < static_cast<std::size_t>(len); ++j)
        odo[j] = 0;
    }
  }
  // Enumeration is lexicographic in (component, generator) pairs; reorder to
  // the canonical (length, component sequence, generator sequence) order.
  std::sort(basis.begin(), basis.end(), WordLess{});
  return basis;
}

GramReport build_gram(const BiFreeSystem& sys, const std::vector<Word>& basis,
                      double tol, int threads) {
  const auto n = static_cast<Eigen::Index>(basis.size());
  std::vector<NCPoly> reflected;
  reflected.reserve(basis.size());
  for (const Word& w : basis)
    reflected.push_back(theta(NCPoly::monomial(w)));

  Eigen::MatrixXcd g(n, n);
  parallel_for(n * n, threads, [&](Eigen::Index e) {
    const Eigen::Index k = e / n;
    const Eigen::Index l = e % n;
    const NCPoly p =
        mul(reflected[static_cast<std::size_t>(k)],
            NCPoly::monomial(basis[static_cast<std::size_t>(l)]),
            sys.config().term_cap);
    g(k, l) = sys.evaluate_tau(p);
  });
  return certify_gram(basis, std::move(g), tol);
}

std::vector<PatternBlock> pattern_blocks(const BiFreeSystem& sys,
                                         const std::vector<Word>& basis) {
  std::map<std::vector<std::int32_t>, std::vector<CenteredTerm>> groups;
  for (const Word& w : basis) {
    for (CenteredTerm& t : sys.center_decompose(NCPoly::monomial(w))) {
      if (t.factors.empty()) continue;
      groups[pattern(t)].push_back(std::move(t));
    }
  }

  std::vector<PatternBlock> blocks;
  for (const auto& [pat, terms] : groups) {
    PatternBlock block;
    block.pattern = pat;
    const auto p = static_cast<Eigen::Index>(terms.size());
    block.schur_product = Eigen::MatrixXcd::Ones(p, p);
    for (std::size_t level = 0; level < pat.size(); ++level) {
      Eigen::MatrixXcd h(p, p);
      for (Eigen::Index k = 0; k < p; ++k)
        for (Eigen::Index l = 0; l < p; ++l)
          h(k, l) = sys.local_pairing(
              terms[static_cast<std::size_t>(k)].factors[level],
              terms[static_cast<std::size_t>(l)].factors[level]);
      block.schur_product = hadamard(block.schur_product, h);
      block.level_grams.push_back(std::move(h));
    }
    blocks.push_back(std::move(block));
  }
  return blocks;
}

TheoremReport verify_theorem(const BiFreeSystem& sys, int max_len, int trials,
                             double psd_tol, double moment_tol,
                             std::uint64_t seed, int threads) {
  TheoremReport report;

  report.hypothesis_ok = true;
  for (std::int32_t i = 0; i < static_cast<std::int32_t>(sys.component_count());
       ++i) {
    report.components.push_back(
        check_component_rp(sys.component(i), max_len, psd_tol, i));
    report.hypothesis_ok = report.hypothesis_ok && report.components.back().psd;
  }

  const std::vector<Word> basis = positive_word_basis(sys, max_len);
  report.gram = build_gram(sys, basis, psd_tol, threads);
  report.gram_ok = report.gram.psd;

  report.trials = std::max(0, trials);
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  double min_re = 0.0;
  double max_im = 0.0;
  for (int t = 0; t < report.trials; ++t) {
    NCPoly a;
    for (const Word& w : basis)
      a.add_term(w, Scalar(gauss(rng), gauss(rng)));
    const Scalar q =
        sys.evaluate_tau(mul(theta(a), a, sys.config().term_cap));
    if (t == 0 || q.real() < min_re) min_re = q.real();
    max_im = std::max(max_im, std::abs(q.imag()));
  }
  report.min_quadratic_real = min_re;
  report.max_quadratic_imag = max_im;
  report.random_ok = min_re >= -psd_tol && max_im <= moment_tol;

  if (!report.hypothesis_ok)
    report.verdict = TheoremVerdict::kHypothesisFailure;
  else if (report.gram_ok && report.random_ok)
    report.verdict = TheoremVerdict::kPass;
  else
    report.verdict = TheoremVerdict::kTheoremFailure;
  return report;
}

}  // namespace bifree
