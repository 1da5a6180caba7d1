#pragma once

#include <map>
#include <vector>

#include "bifree/config.hpp"
#include "bifree/word.hpp"

namespace bifree {

/// Sparse noncommutative polynomial: a finite map from normal-form words to
/// complex coefficients. Coefficients below kCoeffDropTol are never stored.
class NCPoly {
 public:
  using TermMap = std::map<Word, Scalar, WordLess>;

  NCPoly() = default;

  static NCPoly zero() { return NCPoly(); }
  static NCPoly unit() { return monomial(Word(), Scalar(1.0)); }
  static NCPoly monomial(Word w, Scalar c = Scalar(1.0));

  const TermMap& terms() const { return terms_; }
  std::size_t term_count() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }

  Scalar coefficient(const Word& w) const;

  // Accumulates c onto w, dropping the entry if the result is negligible.
  // Rejects non-finite coefficients.
  void add_term(const Word& w, Scalar c);

  NCPoly& operator+=(const NCPoly& other);
  NCPoly& operator-=(const NCPoly& other);
  NCPoly& operator*=(Scalar s);

  friend NCPoly operator+(NCPoly a, const NCPoly& b) { return a += b; }
  friend NCPoly operator-(NCPoly a, const NCPoly& b) { return a -= b; }
  friend NCPoly operator*(NCPoly a, Scalar s) { return a *= s; }
  friend NCPoly operator*(Scalar s, NCPoly a) { return a *= s; }
  friend NCPoly operator*(const NCPoly& a, const NCPoly& b) {
    return mul(a, b, kDefaultTermCap);
  }

  friend NCPoly mul(const NCPoly& a, const NCPoly& b, std::size_t term_cap);

  friend bool operator==(const NCPoly&, const NCPoly&) = default;

 private:
  TermMap terms_;
};

// Bilinear product; word product is concatenation followed by normalization.
// Throws CapExceeded once the result holds more than term_cap terms.
NCPoly mul(const NCPoly& a, const NCPoly& b, std::size_t term_cap);

// The reflection: toggles every letter's face (order kept, theta being a
// homomorphism) and conjugates every coefficient.
NCPoly theta(const NCPoly& p);

struct FaceSplit {
  Word neg;   // the reflected block, letters on the negative face
  Word pos;   // the unreflected block
  Scalar coeff;
};

// Splits each term's normal-form word at the face boundary; reassembling
// neg * pos with coeff reproduces the polynomial exactly.
std::vector<FaceSplit> split_faces(const NCPoly& p);

// Largest coefficient-wise distance between two polynomials.
double coeff_distance(const NCPoly& a, const NCPoly& b);

}  // namespace bifree
