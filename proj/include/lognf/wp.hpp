#pragma once
// Metered word-problem deciders.
//
// Free groups (any rank, via the Sanov embedding) and C2 * C3 (as PSL2(Z))
// get a modular-arithmetic decider: the integer matrix product is tested
// against the identity modulo one prime at a time, with enough primes that
// their product exceeds the 5^N entry bound.  Workspace stays logarithmic:
// one prime, one residue matrix and a few counters live at any moment.

#include <array>
#include <memory>
#include <vector>

#include "lognf/machine.hpp"

namespace lognf {

struct IMat2 {
  long long a = 1, b = 0, c = 0, d = 1;
};

IMat2 imat_mul(const IMat2& x, const IMat2& y);

// Residues of one 2x2 product modulo the fixed filter primes (3, 5, 7).
// Constant-size state: plays the role of finite control in scanning machines.
struct FilterResidues {
  static constexpr int kPrimes = 3;
  static constexpr long long prime(int i) { return i == 0 ? 3 : i == 1 ? 5 : 7; }
  std::array<std::array<long long, 4>, kPrimes> m;

  FilterResidues() { reset(); }
  void reset();
  void mul_by(const IMat2& x);
  bool is_identity() const;
  // equal to `o` (up to a global sign per prime when up_to_sign)
  bool equals(const FilterResidues& o, bool up_to_sign) const;
};

// A modular matrix representation: one exact integer matrix per positive
// generator (inverses derived), a per-generator weight for the entry-bound
// budget, and the triviality criterion.
class ModularRep {
 public:
  enum class Mode { Identity, PlusMinusIdentity };

  ModularRep(std::vector<IMat2> gens, std::vector<long long> weights, Mode mode);

  const IMat2& mat(Letter l) const {
    int a = l < 0 ? -l : l;
    return l > 0 ? gens_[static_cast<size_t>(a - 1)] : invs_[static_cast<size_t>(a - 1)];
  }
  long long weight(Letter l) const {
    int a = l < 0 ? -l : l;
    return weights_[static_cast<size_t>(a - 1)];
  }
  Mode mode() const { return mode_; }

  // Decides triviality of the word on the source by the prime ladder.  The
  // first `verified_primes` odd primes (3, 5, ...) may be credited to the
  // entry-bound budget without a pass when the caller has already checked the
  // word's residues against them (the scan filters do exactly that).
  bool trivial(LetterSource& src, Exec& ex, int verified_primes = 0) const;

 private:
  std::vector<IMat2> gens_;
  std::vector<IMat2> invs_;
  std::vector<long long> weights_;
  Mode mode_;
};

// Sanov representation of the free group of the given rank: generator i maps
// to b^i a b^-i over a = [[1,2],[0,1]], b = [[1,0],[2,1]]; weight 2i+1.
std::shared_ptr<const ModularRep> sanov_rep(int rank);

// As above but with an arbitrary assignment of basis indices to letters
// (used for free products of free-like factors over a merged alphabet).
std::shared_ptr<const ModularRep> sanov_rep_for(const std::vector<int>& basis_index);

// C2 * C3 as PSL2(Z): letter 1 -> S = [[0,-1],[1,0]], letter 2 -> z =
// [[0,-1],[1,-1]]; trivial iff the product is +-I.
std::shared_ptr<const ModularRep> psl2_rep();

// The spec-level operation: true iff the word is trivial in Free(rank).
bool free_wp_metered(const Word& w, int rank, Exec& ex);
bool free_wp_metered(const Word& w, int rank,
                     unsigned long long step_limit = Exec::kDefaultStepLimit);

}  // namespace lognf
