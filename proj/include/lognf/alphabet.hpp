#pragma once
// Symmetric generator alphabets and the word wire format.
//
// Words are whitespace-separated tokens `name`, `name^-1`, `name^k`,
// `name^-k` (k >= 1 expands to k copies); the empty word prints as an empty
// string and parses from "" or the lambda symbol.

#include <map>
#include <string>
#include <vector>

#include "lognf/stream.hpp"

namespace lognf {

class Alphabet {
 public:
  Alphabet() = default;
  explicit Alphabet(std::vector<std::string> names);

  int rank() const { return static_cast<int>(names_.size()); }
  const std::string& name(int idx) const { return names_[static_cast<size_t>(idx - 1)]; }
  const std::vector<std::string>& names() const { return names_; }

  // Positive generator index for a base name, or 0 if unknown.
  int index_of(const std::string& name) const;

  bool contains(Letter l) const {
    int a = l < 0 ? -l : l;
    return a >= 1 && a <= rank();
  }

  // Spelling of one letter: "name" or "name^-1".
  std::string spell(Letter l) const;

  // Position of a letter in the fixed shortlex letter order: generators in
  // declaration order, each positive letter immediately before its inverse.
  int order_key(Letter l) const {
    int a = l < 0 ? -l : l;
    return 2 * (a - 1) + (l < 0 ? 1 : 0);
  }

  bool operator==(const Alphabet& o) const { return names_ == o.names_; }

 private:
  std::vector<std::string> names_;
  std::map<std::string, int> index_;
};

// Disjoint union with positional prefixes "0." and "1.".
Alphabet product_alphabet(const Alphabet& left, const Alphabet& right);

Word parse_word(const std::string& text, const Alphabet& a);
std::string format_word(const Word& w, const Alphabet& a);

// Formal inverse: reversed word with every letter inverted.
Word formal_inverse(const Word& w);

// Shortlex comparison of materialized words under the alphabet order.
int shortlex_cmp_words(const Word& u, const Word& v, const Alphabet& a);

}  // namespace lognf
