#pragma once
// Normal-form machines for the basic families: the integer counter for Z,
// the mod-m counter for finite cyclic groups, the free-group reduction scan,
// and the two-pass direct-product machine.

#include "lognf/machine.hpp"
#include "lognf/wp.hpp"

namespace lognf {

// Z = <t>: scan once updating a binary counter, then emit t^i.
TransducerPtr make_z_nf(const Alphabet& a);

// Cyclic(m): counter mod m, emit c^i with 0 <= i < m.
TransducerPtr make_cyclic_nf(const Alphabet& a, long long m);

// Free(rank): the two-counter scan.  For the letter at c1, scan c2 over the
// matching inverse letters to its right; a candidate subword x u x^-1 is
// handed to the metered free-group word problem, whose leading primes are
// maintained incrementally as running residues so most candidates are
// rejected without a rescan.  On "trivial" the head jumps past the subword;
// if no witness exists the letter is emitted.
TransducerPtr make_free_nf(const Alphabet& a, int rank);

// Projection of a product-alphabet source onto one side, re-indexed to the
// factor's own alphabet.  `side` 0 keeps letters 1..offset, side 1 the rest.
class SideProjectionSource : public LetterSource {
 public:
  SideProjectionSource(LetterSource& base, Exec& ex, int offset, int side)
      : base_(&base), ex_(&ex), offset_(offset), side_(side), pos_(ex, 0), count_(ex, 0) {}

  Letter at(long long j) override;

 private:
  LetterSource* base_;
  Exec* ex_;
  int offset_;
  int side_;
  Reg pos_;    // position in the underlying source already consumed
  Reg count_;  // side letters seen up to pos_
};

// Direct product: f(u) h(v) via two passes, each ignoring the other factor's
// letters.
TransducerPtr make_direct_nf(TransducerPtr left, TransducerPtr right);

}  // namespace lognf
