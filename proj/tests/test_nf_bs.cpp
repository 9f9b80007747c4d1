#include <cstdlib>

#include "doctest.h"
#include "lognf/nf_bs.hpp"
#include "support.hpp"

using namespace lognf;
using namespace testsup;

namespace {

// Zero-t-exponent random word of length <= maxlen.
Word random_zero_texp(const Alphabet& a, std::mt19937_64& rng, long long maxlen) {
  for (;;) {
    Word w = random_word(a, static_cast<long long>(rng() % (maxlen - 5)), rng);
    long long t = 0;
    for (Letter l : w) {
      if (l == 2) ++t;
      if (l == -2) --t;
    }
    if (std::llabs(t) > 6) continue;
    for (long long i = 0; i < std::llabs(t); ++i) w.push_back(t > 0 ? -2 : 2);
    return w;
  }
}

}  // namespace

TEST_CASE("level statistics") {
  Alphabet a = alphabet_of(E("BS(1,2)"));
  // the worked word: a-letters at levels -2, -1, 1; texp = 3
  Word w = parse_word("t^-2 a t^2 t^-1 a t t a t^-1 t^3", a);
  LevelStats s = bs_level_stats(w);
  CHECK(s.texp == 3);
  CHECK(s.l_min == -2);
  CHECK(s.l_max == 3);
  CHECK(bs_level_stats({}) == LevelStats{0, 0, 0});
  CHECK(bs_level_stats(parse_word("t^-3", a)) == LevelStats{-3, -3, 0});
}

TEST_CASE("approximation algorithm examples") {
  Alphabet a = alphabet_of(E("BS(1,2)"));
  {
    auto [out, beta] = bs_approximate(2, parse_word("a t a t^-1", a));
    CHECK(format_word(out, a) == "a t a t^-1");
    CHECK(beta == 1);
  }
  {
    auto [out, beta] = bs_approximate(2, parse_word("a a t a t^-1", a));
    CHECK(format_word(out, a) == "t a a t^-1");
    CHECK(beta == 2);  // carry from level 0 into level 1
  }
  {
    auto [out, beta] = bs_approximate(2, {});
    CHECK(out.empty());
    CHECK(beta == 0);
  }
  CHECK_THROWS_AS(bs_approximate(2, parse_word("t", a)), Error);
}

TEST_CASE("digit expansion of the final block") {
  Alphabet a = alphabet_of(E("BS(1,2)"));
  CHECK(format_word(bs_expand_hs(2, {}, 2, -1), a) == "t t a t^-1 t^-1");
  CHECK(format_word(bs_expand_hs(2, {}, 1, 5), a) ==
        format_word(parse_word("t^-5 a t^5", a), a));
  CHECK(format_word(bs_expand_hs(2, {}, 5, 0), a) == "a t t a t^-1 t^-1");
  CHECK_THROWS_AS(bs_expand_hs(2, {}, 0, 0), Error);
  CHECK_THROWS_AS(bs_expand_hs(2, {}, -3, 0), Error);
}

TEST_CASE("normal form: the worked example is an exact fixed point") {
  Built b = build("BS(1,2)");
  Word w = parse_word("t^-2 a t^2 t^-1 a t t a t^-1 t^3", b.alphabet);
  Word nf = run_nf(b, w);
  CHECK(nf == w);  // fixed point, spelled with verbatim conjugate blocks
  Element el = b.oracle.eval(nf);
  CHECK(el.ints[1] == 3);
  CHECK(el.bigs[0] == 11);
  CHECK(el.ints[2] == 2);
}

TEST_CASE("normal form shapes and the quadratic length law") {
  Built b = build("BS(1,2)");
  CHECK(run_nf(b, parse_word("t t^-1", b.alphabet)).empty());
  for (long long k = 1; k <= 12; ++k) {
    Word w;
    for (long long i = 0; i <= k; ++i) w.push_back(2);
    w.push_back(1);
    for (long long i = 0; i <= k; ++i) w.push_back(-2);
    w.push_back(-1);
    Word nf = run_nf(b, w);
    CHECK(static_cast<long long>(nf.size()) == k * k + 2 * k + 1);
    CHECK(nf == nf_from_element(b.expr, b.oracle.eval(w)));
  }
}

TEST_CASE("block structure: descending conjugation exponents, uniform digit sign") {
  std::mt19937_64 rng(107);
  for (long long p : {2, 3, 5}) {
    Built b = build("BS(1," + std::to_string(p) + ")");
    for (int i = 0; i < 150; ++i) {
      Word w = random_word(b.alphabet, static_cast<long long>(rng() % 41), rng);
      Word nf = run_nf(b, w);
      CHECK(nf == nf_from_element(b.expr, b.oracle.eval(w)));
      CHECK(b.oracle.eval(nf) == b.oracle.eval(w));
    }
  }
}

TEST_CASE("approximation loop invariant against the matrix oracle") {
  std::mt19937_64 rng(109);
  for (long long p : {2, 3, 5}) {
    Built b = build("BS(1," + std::to_string(p) + ")");
    Oracle& oracle = b.oracle;
    for (int trial = 0; trial < 100; ++trial) {
      Word u = random_zero_texp(b.alphabet, rng, 40);
      Element target = oracle.eval(u);
      BsApproxProbe probe;
      int checks = 0;
      probe.on_level = [&](long long l_next, long long aexp,
                           const std::vector<std::pair<long long, long long>>& blocks) {
        // v * (a^aexp)^{t^-l} * [u]_l must equal u at every level boundary.
        Word v;
        for (auto [lvl, e] : blocks) {
          Word blk;
          long long alpha = -lvl;
          for (long long i = 0; i < std::llabs(alpha); ++i) blk.push_back(alpha >= 0 ? -2 : 2);
          for (long long i = 0; i < std::llabs(e); ++i) blk.push_back(e >= 0 ? 1 : -1);
          for (long long i = 0; i < std::llabs(alpha); ++i) blk.push_back(alpha >= 0 ? 2 : -2);
          v.insert(v.end(), blk.begin(), blk.end());
        }
        for (long long i = 0; i < std::llabs(l_next); ++i) v.push_back(l_next >= 0 ? 2 : -2);
        for (long long i = 0; i < std::llabs(aexp); ++i) v.push_back(aexp >= 0 ? 1 : -1);
        for (long long i = 0; i < std::llabs(l_next); ++i) v.push_back(l_next >= 0 ? -2 : 2);
        // [u]_l: drop a-letters at levels below l_next.
        long long lvl = 0;
        for (Letter l : u) {
          if (l == 2) {
            ++lvl;
            v.push_back(l);
          } else if (l == -2) {
            --lvl;
            v.push_back(l);
          } else if (lvl >= l_next) {
            v.push_back(l);
          }
        }
        CHECK(oracle.eval(v) == target);
        ++checks;
      };
      bs_approximate(p, u, &probe);
      CHECK(checks > 0);
    }
  }
}

TEST_CASE("zero-t-exponent words commute") {
  std::mt19937_64 rng(113);
  Built b = build("BS(1,2)");
  for (int i = 0; i < 200; ++i) {
    Word w1 = random_zero_texp(b.alphabet, rng, 30);
    Word w2 = random_zero_texp(b.alphabet, rng, 30);
    Word ab = w1, ba = w2;
    ab.insert(ab.end(), w2.begin(), w2.end());
    ba.insert(ba.end(), w1.begin(), w1.end());
    CHECK(b.oracle.eval(ab) == b.oracle.eval(ba));
  }
}

TEST_CASE("negative case runs through the inverted word") {
  Built b = build("BS(1,2)");
  Word w = parse_word("a^-1", b.alphabet);
  CHECK(format_word(run_nf(b, w), b.alphabet) == "a^-1");
  Word w2 = parse_word("a^-1 t a^-1 t^-1 a^-1", b.alphabet);
  Word nf = run_nf(b, w2);
  CHECK(nf == nf_from_element(b.expr, b.oracle.eval(w2)));
  // All a-letters in the output carry the negative sign.
  for (Letter l : nf) CHECK(l != 1);
}
