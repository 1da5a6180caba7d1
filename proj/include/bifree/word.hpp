#pragma once

#include <compare>
#include <cstdint>
#include <vector>

#include "bifree/config.hpp"

namespace bifree {

struct GeneratorRef {
  std::int32_t algebra_id = 0;
  std::int32_t local_id = 0;

  friend auto operator<=>(const GeneratorRef&, const GeneratorRef&) = default;
};

// One letter of a word: a positive-face generator g, or its reflection
// theta(g) on the negative face when `reflected` is set.
struct Letter {
  GeneratorRef gen;
  bool reflected = false;

  friend auto operator<=>(const Letter&, const Letter&) = default;
};

inline Letter pos_letter(std::int32_t algebra, std::int32_t local) {
  return Letter{{algebra, local}, false};
}
inline Letter neg_letter(std::int32_t algebra, std::int32_t local) {
  return Letter{{algebra, local}, true};
}

/// A word in bipartite normal form: every reflected letter precedes every
/// unreflected one, and the relative order within each face is the order in
/// which the letters were given. The empty word is the unit.
class Word {
 public:
  Word() = default;
  explicit Word(std::vector<Letter> raw);

  const std::vector<Letter>& letters() const { return letters_; }
  std::size_t size() const { return letters_.size(); }
  bool empty() const { return letters_.empty(); }

  // Index of the first unreflected letter (== size() for purely reflected
  // words). Letters [0, boundary) form the negative-face block.
  std::size_t boundary() const;

  bool is_positive() const { return boundary() == 0; }

  Word negative_block() const;
  Word positive_block() const;

  friend bool operator==(const Word&, const Word&) = default;

 private:
  std::vector<Letter> letters_;
};

// Stable two-face partition: reflected letters move left past unreflected
// ones, never past each other.
Word normalize(std::vector<Letter> letters);

Word concat(const Word& a, const Word& b);

// Toggles every letter's face, preserving letter order; this is theta on a
// monomial (the coefficient conjugation lives in the polynomial layer).
Word reflect(const Word& w);

// Total order: length, then algebra-id sequence, then local-id sequence,
// then face sequence. Keeps bases and reports deterministic.
struct WordLess {
  bool operator()(const Word& a, const Word& b) const;
};

}  // namespace bifree
