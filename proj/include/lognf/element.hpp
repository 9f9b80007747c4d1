#pragma once
// Exact, unbounded-space group element values and evaluators: the ground
// truth the normal-form machines are tested against.  Oracles are exempt from
// workspace metering by design.

#include <gmpxx.h>

#include <string>
#include <vector>

#include "lognf/expr.hpp"

namespace lognf {

enum class ElTag : int {
  Z = 1,
  Cyc = 2,
  Free = 3,
  BS = 4,
  UT = 5,
  Pair = 6,
  Wreath = 7,
  Syll = 8,
  Torus = 9,
};

// One exact value.  The payload layout depends on the tag:
//   Z:      ints = {v}
//   Cyc:    ints = {m, v}                       0 <= v < m
//   Free:   ints = {k, l1, l2, ...}             reduced letters
//   BS:     ints = {p, i, e}, bigs = {num}      m = num / p^e, canonical
//   UT:     ints = {r, entries row-major}
//   Pair:   kids = {left, right}
//   Wreath: kids = {cursor, k1, v1, k2, v2, ...} keys strictly increasing
//   Syll:   ints = {side1, ...}, kids = syllable values, alternating
//   Torus:  ints = {m, n, i}, kids = {quotient image}
struct Element {
  ElTag tag = ElTag::Z;
  std::vector<long long> ints;
  std::vector<mpz_class> bigs;
  std::vector<Element> kids;

  bool operator==(const Element& o) const;
  bool operator<(const Element& o) const;
  std::string str() const;
};

// Compositional exact evaluator for one group expression.
class Oracle {
 public:
  explicit Oracle(GroupExpr e);

  const GroupExpr& expr() const { return expr_; }
  Element identity() const;
  Element letter(Letter l) const;
  Element eval(const Word& w) const;
  Element mul(const Element& x, const Element& y) const;
  bool is_identity(const Element& x) const { return x == identity(); }
  bool equal(const Element& x, const Element& y) const { return x == y; }

 private:
  GroupExpr expr_;
};

// Structural equality of exact values; FamilyMismatch if tags differ.
bool oracle_equal(const Element& a, const Element& b);

// Stack-based free reduction (the classical oracle free groups are tested
// against).
Word free_reduce(const Word& w);

// Schreier generator words g_{r,y} = r y q^-1 (freely reduced, trivial ones
// omitted) in the enumeration order used for the subgroup alphabet.
std::vector<Word> schreier_words(const CosetTable& t, const Alphabet& parent);

}  // namespace lognf
