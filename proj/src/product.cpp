#include "bifree/product.hpp"

#include <cmath>
#include <random>
#include <string>

namespace bifree {

namespace {

constexpr std::size_t kFnvOffset = 1469598103934665603ull;
constexpr std::size_t kFnvPrime = 1099511628211ull;

void hash_mix(std::size_t& h, std::size_t v) {
  h ^= v;
  h *= kFnvPrime;
}

}  // namespace

void LocalElement::add(const LocalWord& w, Scalar c) {
  auto [it, inserted] = coeffs.try_emplace(w, c);
  if (!inserted) it->second += c;
  if (std::abs(it->second) < kCoeffDropTol) coeffs.erase(it);
}

std::vector<std::int32_t> pattern(const CenteredTerm& term) {
  std::vector<std::int32_t> ids;
  ids.reserve(term.factors.size());
  for (const auto& f : term.factors) ids.push_back(f.algebra_id);
  return ids;
}

std::size_t BiFreeSystem::MomentKeyHash::operator()(
    const MomentKey& k) const {
  std::size_t h = kFnvOffset;
  hash_mix(h, static_cast<std::size_t>(k.algebra));
  hash_mix(h, k.neg.size());
  for (auto id : k.neg) hash_mix(h, static_cast<std::size_t>(id) + 1);
  hash_mix(h, k.pos.size());
  for (auto id : k.pos) hash_mix(h, static_cast<std::size_t>(id) + 1);
  return h;
}

std::size_t BiFreeSystem::WordHash::operator()(const Word& w) const {
  std::size_t h = kFnvOffset;
  for (const Letter& l : w.letters()) {
    hash_mix(h, static_cast<std::size_t>(l.gen.algebra_id));
    hash_mix(h, static_cast<std::size_t>(l.gen.local_id) + 7);
    hash_mix(h, l.reflected ? 3 : 5);
  }
  return h;
}

BiFreeSystem::BiFreeSystem(
    std::vector<std::shared_ptr<const MomentOracle>> components,
    SystemConfig config)
    : components_(std::move(components)), config_(config) {
  if (components_.empty())
    throw ModelError("BiFreeSystem: at least one component required");
  for (const auto& c : components_)
    if (!c) throw ModelError("BiFreeSystem: null component");
}

const MomentOracle& BiFreeSystem::component(std::int32_t i) const {
  if (i < 0 || static_cast<std::size_t>(i) >= components_.size())
    throw ModelError("BiFreeSystem: component index " + std::to_string(i) +
                     " out of range");
  return *components_[static_cast<std::size_t>(i)];
}

Scalar BiFreeSystem::cached_moment(std::int32_t algebra, const LocalWord& neg,
                                   const LocalWord& pos) const {
  MomentKey key{algebra, neg, pos};
  {
    std::lock_guard lock(moment_mutex_);
    auto it = moment_cache_.find(key);
    if (it != moment_cache_.end()) return it->second;
  }
  const Scalar value = component(algebra).moment(neg, pos);
  std::lock_guard lock(moment_mutex_);
  return moment_cache_.try_emplace(std::move(key), value).first->second;
}

Scalar BiFreeSystem::local_mean(const LocalElement& x) const {
  Scalar m(0.0);
  for (const auto& [w, c] : x.coeffs)
    m += c * cached_moment(x.algebra_id, {}, w);
  return m;
}

Scalar BiFreeSystem::local_pairing(const LocalElement& a,
                                   const LocalElement& b) const {
  if (a.algebra_id != b.algebra_id)
    throw ModelError("local_pairing: mismatched components");
  Scalar v(0.0);
  for (const auto& [wa, ca] : a.coeffs)
    for (const auto& [wb, cb] : b.coeffs)
      v += std::conj(ca) * cb * cached_moment(a.algebra_id, wa, wb);
  return v;
}

std::vector<LocalElement> BiFreeSystem::merge_adjacent(
    std::vector<LocalElement> factors) const {
  std::vector<LocalElement> merged;
  merged.reserve(factors.size());
  for (auto& f : factors) {
    if (!merged.empty() && merged.back().algebra_id == f.algebra_id) {
      LocalElement prod;
      prod.algebra_id = f.algebra_id;
      for (const auto& [wa, ca] : merged.back().coeffs) {
        for (const auto& [wb, cb] : f.coeffs) {
          LocalWord w = wa;
          w.insert(w.end(), wb.begin(), wb.end());
          prod.add(w, ca * cb);
          if (prod.coeffs.size() > config_.term_cap)
            throw CapExceeded("center_decompose: term cap exceeded");
        }
      }
      merged.back() = std::move(prod);
    } else {
      merged.push_back(std::move(f));
    }
  }
  return merged;
}

// Expands prod_k (x_k° + tau(x_k) 1) over the factor list: every subset of
// means turns into a scalar, the rest of the factors are centered. Branches
// that drop a unit factor can make same-component factors adjacent again;
// those are re-merged and expanded recursively. Each recursion strictly
// shrinks the factor list, so this terminates.
void BiFreeSystem::expand(Scalar coeff, std::vector<LocalElement> factors,
                          std::vector<CenteredTerm>& out) const {
  factors = merge_adjacent(std::move(factors));
  for (const auto& f : factors)
    if (f.is_zero()) return;  // the whole product is zero

  std::vector<std::size_t> heavy;
  std::vector<Scalar> means(factors.size(), Scalar(0.0));
  for (std::size_t i = 0; i < factors.size(); ++i) {
    means[i] = local_mean(factors[i]);
    if (std::abs(means[i]) > config_.centering_tol) heavy.push_back(i);
  }

  if (heavy.empty()) {
    if (std::abs(coeff) >= kCoeffDropTol)
      out.push_back({coeff, std::move(factors)});
    if (out.size() > config_.term_cap)
      throw CapExceeded("center_decompose: term cap exceeded");
    return;
  }
  if (heavy.size() > 62)
    throw CapExceeded("center_decompose: too many factors to expand");

  for (std::uint64_t mask = 0; mask < (1ull << heavy.size()); ++mask) {
    Scalar c = coeff;
    std::vector<LocalElement> keep;
    keep.reserve(factors.size());
    bool zero_branch = false;
    std::size_t heavy_pos = 0;
    for (std::size_t i = 0; i < factors.size(); ++i) {
      const bool is_heavy = heavy_pos < heavy.size() && heavy[heavy_pos] == i;
      if (is_heavy && (mask >> heavy_pos) & 1ull) {
        c *= means[i];  // this factor contributes its mean times the unit
        ++heavy_pos;
        continue;
      }
      LocalElement f = factors[i];
      if (is_heavy) {
        f.add({}, -means[i]);
        ++heavy_pos;
      }
      if (f.is_zero()) {
        zero_branch = true;
        break;
      }
      keep.push_back(std::move(f));
    }
    if (zero_branch || std::abs(c) < kCoeffDropTol) continue;

    bool collision = false;
    for (std::size_t i = 1; i < keep.size(); ++i)
      if (keep[i - 1].algebra_id == keep[i].algebra_id) collision = true;

    if (mask != 0 && collision) {
      expand(c, std::move(keep), out);
    } else {
      out.push_back({c, std::move(keep)});
    }
    if (out.size() > config_.term_cap)
      throw CapExceeded("center_decompose: term cap exceeded");
  }
}

BiFreeSystem::Decomposition BiFreeSystem::decompose_word(
    const Word& positive_word) const {
  {
    std::lock_guard lock(decomp_mutex_);
    auto it = decomp_cache_.find(positive_word);
    if (it != decomp_cache_.end()) return it->second;
  }

  // Merge maximal runs of same-component letters into monomial factors.
  std::vector<LocalElement> factors;
  for (const Letter& l : positive_word.letters()) {
    if (l.reflected)
      throw ModelError("center_decompose: reflected letter in positive word");
    const auto& oracle = component(l.gen.algebra_id);
    if (l.gen.local_id < 0 || l.gen.local_id >= oracle.generator_count())
      throw ModelError("center_decompose: generator index out of range");
    if (!factors.empty() && factors.back().algebra_id == l.gen.algebra_id) {
      auto node = factors.back().coeffs.extract(factors.back().coeffs.begin());
      node.key().push_back(l.gen.local_id);
      factors.back().coeffs.insert(std::move(node));
    } else {
      LocalElement f;
      f.algebra_id = l.gen.algebra_id;
      f.add({l.gen.local_id}, Scalar(1.0));
      factors.push_back(std::move(f));
    }
  }

  auto result = std::make_shared<std::vector<CenteredTerm>>();
  expand(Scalar(1.0), std::move(factors), *result);

  std::lock_guard lock(decomp_mutex_);
  return decomp_cache_.try_emplace(positive_word, std::move(result))
      .first->second;
}

std::vector<CenteredTerm> BiFreeSystem::center_decompose(
    const NCPoly& positive) const {
  std::vector<CenteredTerm> out;
  for (const auto& [w, c] : positive.terms()) {
    Decomposition dec = decompose_word(w);
    for (const CenteredTerm& t : *dec)
      out.push_back({c * t.coefficient, t.factors});
    if (out.size() > config_.term_cap)
      throw CapExceeded("center_decompose: term cap exceeded");
  }
  return out;
}

Scalar BiFreeSystem::pair_eq1(const CenteredTerm& a,
                              const CenteredTerm& b) const {
  if (a.factors.size() != b.factors.size()) return Scalar(0.0);
  for (std::size_t k = 0; k < a.factors.size(); ++k)
    if (a.factors[k].algebra_id != b.factors[k].algebra_id)
      return Scalar(0.0);
  Scalar v = std::conj(a.coefficient) * b.coefficient;
  for (std::size_t k = 0; k < a.factors.size(); ++k)
    v *= local_pairing(a.factors[k], b.factors[k]);
  return v;
}

Scalar BiFreeSystem::tau_word(const Word& w) const {
  {
    std::lock_guard lock(tau_mutex_);
    auto it = tau_cache_.find(w);
    if (it != tau_cache_.end()) return it->second;
  }
  const Word a_word = reflect(w.negative_block());
  Decomposition a_dec = decompose_word(a_word);
  Decomposition b_dec = decompose_word(w.positive_block());
  Scalar s(0.0);
  for (const CenteredTerm& ta : *a_dec)
    for (const CenteredTerm& tb : *b_dec) s += pair_eq1(ta, tb);
  std::lock_guard lock(tau_mutex_);
  return tau_cache_.try_emplace(w, s).first->second;
}

Scalar BiFreeSystem::evaluate_tau(const NCPoly& p) const {
  Scalar total(0.0);
  for (const auto& [w, c] : p.terms()) total += c * tau_word(w);
  return total;
}

bool BiFreeSystem::verify_freeness(std::span<const std::int32_t> pat,
                                   int trials, std::uint64_t seed,
                                   double tol) const {
  for (std::size_t k = 0; k < pat.size(); ++k) {
    component(pat[k]);
    if (k > 0 && pat[k] == pat[k - 1])
      throw ModelError("verify_freeness: pattern not alternating");
  }

  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  auto random_centered = [&](std::int32_t algebra) {
    const int n = component(algebra).generator_count();
    LocalElement x;
    x.algebra_id = algebra;
    for (std::int32_t g = 0; g < n; ++g)
      x.add({g}, Scalar(gauss(rng), gauss(rng)));
    std::uniform_int_distribution<std::int32_t> pick(0, n - 1);
    x.add({pick(rng), pick(rng)}, Scalar(gauss(rng), gauss(rng)));
    x.add({}, -local_mean(x));
    return x;
  };

  for (int t = 0; t < trials; ++t) {
    NCPoly poly = NCPoly::unit();
    for (std::int32_t algebra : pat) {
      const LocalElement x = random_centered(algebra);
      NCPoly factor;
      for (const auto& [lw, c] : x.coeffs) {
        std::vector<Letter> letters;
        letters.reserve(lw.size());
        for (std::int32_t g : lw) letters.push_back(pos_letter(algebra, g));
        factor.add_term(Word(std::move(letters)), c);
      }
      poly = mul(poly, factor, config_.term_cap);
    }
    if (std::abs(evaluate_tau(poly)) > tol) return false;
  }
  return true;
}

}  // namespace bifree
