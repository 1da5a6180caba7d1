#include "bifree/ncpoly.hpp"

#include <cmath>

namespace bifree {

NCPoly NCPoly::monomial(Word w, Scalar c) {
  NCPoly p;
  p.add_term(w, c);
  return p;
}

Scalar NCPoly::coefficient(const Word& w) const {
  auto it = terms_.find(w);
  return it == terms_.end() ? Scalar(0.0) : it->second;
}

void NCPoly::add_term(const Word& w, Scalar c) {
  if (!std::isfinite(c.real()) || !std::isfinite(c.imag()))
    throw Error("NCPoly: non-finite coefficient");
  auto [it, inserted] = terms_.try_emplace(w, c);
  if (!inserted) it->second += c;
  if (std::abs(it->second) < kCoeffDropTol) terms_.erase(it);
}

NCPoly& NCPoly::operator+=(const NCPoly& other) {
  for (const auto& [w, c] : other.terms_) add_term(w, c);
  return *this;
}

NCPoly& NCPoly::operator-=(const NCPoly& other) {
  for (const auto& [w, c] : other.terms_) add_term(w, -c);
  return *this;
}

NCPoly& NCPoly::operator*=(Scalar s) {
  if (std::abs(s) < kCoeffDropTol) {
    terms_.clear();
    return *this;
  }
  TermMap scaled;
  for (auto& [w, c] : terms_) {
    Scalar v = c * s;
    if (std::abs(v) >= kCoeffDropTol) scaled.emplace(w, v);
  }
  terms_ = std::move(scaled);
  return *this;
}

NCPoly mul(const NCPoly& a, const NCPoly& b, std::size_t term_cap) {
  NCPoly out;
  for (const auto& [wa, ca] : a.terms()) {
    for (const auto& [wb, cb] : b.terms()) {
      out.add_term(concat(wa, wb), ca * cb);
      if (out.term_count() > term_cap)
        throw CapExceeded("NCPoly: term cap exceeded in mul");
    }
  }
  return out;
}

NCPoly theta(const NCPoly& p) {
  NCPoly out;
  for (const auto& [w, c] : p.terms())
    out.add_term(reflect(w), std::conj(c));
  return out;
}

std::vector<FaceSplit> split_faces(const NCPoly& p) {
  std::vector<FaceSplit> out;
  out.reserve(p.term_count());
  for (const auto& [w, c] : p.terms())
    out.push_back({w.negative_block(), w.positive_block(), c});
  return out;
}

double coeff_distance(const NCPoly& a, const NCPoly& b) {
  double d = 0.0;
  for (const auto& [w, c] : a.terms())
    d = std::max(d, std::abs(c - b.coefficient(w)));
  for (const auto& [w, c] : b.terms())
    d = std::max(d, std::abs(c - a.coefficient(w)));
  return d;
}

}  // namespace bifree
