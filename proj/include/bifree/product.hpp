#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <span>
#include <unordered_map>
#include <vector>

#include "bifree/config.hpp"
#include "bifree/matrix_model.hpp"
#include "bifree/ncpoly.hpp"

namespace bifree {

/// One element of a single positive face A_i^+, as a sparse combination of
/// local generator words.
struct LocalElement {
  std::int32_t algebra_id = 0;
  std::map<LocalWord, Scalar, LocalWordLess> coeffs;

  void add(const LocalWord& w, Scalar c);
  bool is_zero() const { return coeffs.empty(); }
};

/// A scalar multiple of an alternating product of centered local elements,
/// stored in operator order (factors[0] is the leftmost factor). Adjacent
/// factors come from distinct components and every factor is centered; the
/// empty factor list denotes a multiple of the unit.
struct CenteredTerm {
  Scalar coefficient{1.0};
  std::vector<LocalElement> factors;
};

// Component ids of the factors, in operator order.
std::vector<std::int32_t> pattern(const CenteredTerm& term);

struct SystemConfig {
  std::size_t term_cap = kDefaultTermCap;
  double centering_tol = kCenteringTol;
};

/// The bi-free product of the registered components: holds one moment oracle
/// per component and evaluates the product functional tau on polynomials
/// over all faces. Pairings and centered decompositions are memoized; all
/// queries are const and safe to run concurrently.
class BiFreeSystem {
 public:
  explicit BiFreeSystem(
      std::vector<std::shared_ptr<const MomentOracle>> components,
      SystemConfig config = {});

  std::size_t component_count() const { return components_.size(); }
  const MomentOracle& component(std::int32_t i) const;
  const SystemConfig& config() const { return config_; }

  // Writes a positive-face polynomial as a sum of centered alternating
  // terms; the terms reassemble to the input exactly (up to round-off).
  std::vector<CenteredTerm> center_decompose(const NCPoly& positive) const;

  // tau(theta(a) b) for two centered alternating terms a and b, including
  // their scalar coefficients (anti-linearly on the a side). Exactly zero
  // whenever the lengths or the component patterns differ.
  Scalar pair_eq1(const CenteredTerm& a, const CenteredTerm& b) const;

  // The product functional on any polynomial over the product algebra.
  Scalar evaluate_tau(const NCPoly& p) const;

  // Samples random centered local elements along the given alternating
  // pattern and checks that tau vanishes on each product.
  bool verify_freeness(std::span<const std::int32_t> pattern, int trials,
                       std::uint64_t seed,
                       double tol = kDefaultMomentTol) const;

  // tau_i extended linearly to a local element.
  Scalar local_mean(const LocalElement& x) const;
  // tau_i(theta(a) b) extended sesquilinearly (anti-linear in a).
  Scalar local_pairing(const LocalElement& a, const LocalElement& b) const;

 private:
  struct MomentKey {
    std::int32_t algebra;
    LocalWord neg;
    LocalWord pos;
    bool operator==(const MomentKey&) const = default;
  };
  struct MomentKeyHash {
    std::size_t operator()(const MomentKey& k) const;
  };
  struct WordHash {
    std::size_t operator()(const Word& w) const;
  };

  using Decomposition = std::shared_ptr<const std::vector<CenteredTerm>>;

  Scalar cached_moment(std::int32_t algebra, const LocalWord& neg,
                       const LocalWord& pos) const;
  Scalar tau_word(const Word& w) const;
  Decomposition decompose_word(const Word& positive_word) const;
  void expand(Scalar coeff, std::vector<LocalElement> factors,
              std::vector<CenteredTerm>& out) const;
  std::vector<LocalElement> merge_adjacent(
      std::vector<LocalElement> factors) const;

  std::vector<std::shared_ptr<const MomentOracle>> components_;
  SystemConfig config_;

  mutable std::mutex moment_mutex_;
  mutable std::unordered_map<MomentKey, Scalar, MomentKeyHash> moment_cache_;
  mutable std::mutex decomp_mutex_;
  mutable std::unordered_map<Word, Decomposition, WordHash> decomp_cache_;
  mutable std::mutex tau_mutex_;
  mutable std::unordered_map<Word, Scalar, WordHash> tau_cache_;
};

}  // namespace bifree
