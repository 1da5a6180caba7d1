#include "bifree/word.hpp"

#include <algorithm>

namespace bifree {

Word::Word(std::vector<Letter> raw) : letters_(std::move(raw)) {
  std::stable_partition(letters_.begin(), letters_.end(),
                        [](const Letter& l) { return l.reflected; });
}

std::size_t Word::boundary() const {
  std::size_t b = 0;
  while (b < letters_.size() && letters_[b].reflected) ++b;
  return b;
}

Word Word::negative_block() const {
  const std::size_t b = boundary();
  return Word(std::vector<Letter>(letters_.begin(), letters_.begin() + b));
}

Word Word::positive_block() const {
  const std::size_t b = boundary();
  return Word(std::vector<Letter>(letters_.begin() + b, letters_.end()));
}

Word normalize(std::vector<Letter> letters) { return Word(std::move(letters)); }

Word concat(const Word& a, const Word& b) {
  std::vector<Letter> raw;
  raw.reserve(a.size() + b.size());
  raw.insert(raw.end(), a.letters().begin(), a.letters().end());
  raw.insert(raw.end(), b.letters().begin(), b.letters().end());
  return Word(std::move(raw));
}

Word reflect(const Word& w) {
  std::vector<Letter> raw = w.letters();
  for (Letter& l : raw) l.reflected = !l.reflected;
  return Word(std::move(raw));
}

bool WordLess::operator()(const Word& a, const Word& b) const {
  if (a.size() != b.size()) return a.size() < b.size();
  const auto& la = a.letters();
  const auto& lb = b.letters();
  for (std::size_t i = 0; i < la.size(); ++i) {
    if (la[i].gen.algebra_id != lb[i].gen.algebra_id)
      return la[i].gen.algebra_id < lb[i].gen.algebra_id;
  }
  for (std::size_t i = 0; i < la.size(); ++i) {
    if (la[i].gen.local_id != lb[i].gen.local_id)
      return la[i].gen.local_id < lb[i].gen.local_id;
  }
  for (std::size_t i = 0; i < la.size(); ++i) {
    if (la[i].reflected != lb[i].reflected) return lb[i].reflected;
  }
  return false;
}

}  // namespace bifree
