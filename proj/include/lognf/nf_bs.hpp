#pragma once
// BS(1,p) = <a,t | t a t^-1 = a^p>: level statistics, the level-sweep
// approximation of the p-ary expansion, the digit expansion of the final
// block, and the three-shape normal form.
//
// Letters: a = 1, t = 2.  A block (a^e)^{t^alpha} is spelled verbatim as
// t^-alpha a^e t^alpha; consecutive blocks are concatenated without merging
// the adjacent t-runs.

#include <utility>
#include <vector>

#include "lognf/machine.hpp"

namespace lognf {

struct LevelStats {
  long long texp = 0;
  long long l_min = 0;
  long long l_max = 0;
  bool operator==(const LevelStats&) const = default;
};

// One left-to-right pass with three binary counters.
LevelStats bs_level_stats(const Word& w);

struct BsApproxProbe {
  // Fired after every level iteration: the next level value, the carried
  // a-exponent, and the blocks written so far as (level, exponent) pairs.
  std::function<void(long long l_next, long long aexp,
                     const std::vector<std::pair<long long, long long>>& blocks)>
      on_level;
};

// The approximation of a zero-t-exponent word: the emitted word and the final
// beta.  beta = 0 iff the output is empty.  Err::NonZeroTExp otherwise.
std::pair<Word, long long> bs_approximate(long long p, const Word& u,
                                          const BsApproxProbe* probe = nullptr);

// Digit expansion of the final block: emits v_prefix, then (a^{b_j}) at
// conjugation exponents alpha_s - j for the p-ary digits b_j of beta,
// skipping zero digits.  Err::NonPositiveBeta unless beta >= 1.
Word bs_expand_hs(long long p, const Word& v_prefix, long long beta, long long alpha_s);

TransducerPtr make_bs_nf(const Alphabet& a, long long p);

}  // namespace lognf
