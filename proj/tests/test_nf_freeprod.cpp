#include <cstdlib>

#include "doctest.h"
#include "lognf/nf_freeprod.hpp"
#include "support.hpp"

using namespace lognf;
using namespace testsup;

TEST_CASE("longest prefix in a factor") {
  Built b = build("FreeProd(Z,Z)");
  CHECK(freeprod_prefix_in_factor(*b.nf, parse_word("0.t 1.t 0.t^-1", b.alphabet), 0) == 1);
  CHECK(freeprod_prefix_in_factor(*b.nf, parse_word("0.t 0.t", b.alphabet), 0) == 2);
  CHECK(freeprod_prefix_in_factor(*b.nf, parse_word("1.t 0.t", b.alphabet), 0) == 0);
  // Free reduction inside the scan: the whole word collapses into the factor.
  CHECK(freeprod_prefix_in_factor(*b.nf, parse_word("0.t 1.t 1.t^-1 0.t", b.alphabet), 0) == 4);
}

TEST_CASE("free product normal form examples") {
  Built b = build("FreeProd(Cyclic(2),Cyclic(3))");
  auto nf = [&](const char* s) {
    return format_word(run_nf(b, parse_word(s, b.alphabet)), b.alphabet);
  };
  CHECK(nf("0.c 1.c 1.c 1.c 0.c") == "");
  CHECK(nf("0.c 1.c^-1") == "0.c 1.c 1.c");
  CHECK(nf("0.c 0.c 0.c") == "0.c");  // single-factor word gets the factor NF
  CHECK(nf("1.c^-2") == "1.c");
}

TEST_CASE("output alternates nonempty factor syllables") {
  std::mt19937_64 rng(83);
  for (const char* g : {"FreeProd(Z,Z)", "FreeProd(Cyclic(2),Cyclic(3))"}) {
    Built b = build(g);
    int off = alphabet_of(*b.expr.left).rank();
    for (int i = 0; i < 120; ++i) {
      Word w = random_word(b.alphabet, static_cast<long long>(rng() % 49), rng);
      Word out = run_nf(b, w);
      // Syllable sides alternate; within this family each syllable is a
      // nonempty run.
      int prev_side = -1;
      size_t j = 0;
      while (j < out.size()) {
        int side = (std::abs(out[j]) <= off) ? 0 : 1;
        CHECK(side != prev_side);
        size_t k = j;
        while (k < out.size() && ((std::abs(out[k]) <= off) ? 0 : 1) == side) ++k;
        prev_side = side;
        j = k;
      }
    }
  }
}

TEST_CASE("Z * Z coincides with the rank-2 free group reduction") {
  Built b = build("FreeProd(Z,Z)");
  Built f2 = build("Free(2)");
  std::mt19937_64 rng(89);
  for (int i = 0; i < 150; ++i) {
    Word w = random_word(b.alphabet, static_cast<long long>(rng() % 65), rng);
    CHECK(run_nf(b, w) == run_nf(f2, w));  // evident letter identification
  }
}

TEST_CASE("free product output equals the syllable-oracle reconstruction") {
  std::mt19937_64 rng(97);
  for (const char* g : {"FreeProd(Z,Z)", "FreeProd(Cyclic(2),Cyclic(3))",
                        "FreeProd(Cyclic(3),Cyclic(4))"}) {
    Built b = build(g);
    for (int i = 0; i < 150; ++i) {
      Word w = random_word(b.alphabet, static_cast<long long>(rng() % 49), rng);
      CHECK(run_nf(b, w) == nf_from_element(b.expr, b.oracle.eval(w)));
    }
  }
}

TEST_CASE("bijectivity on adversarial unreduced inputs") {
  std::mt19937_64 rng(101);
  for (const char* g : {"FreeProd(Z,Z)", "FreeProd(Cyclic(2),Cyclic(3))"}) {
    Built b = build(g);
    for (int i = 0; i < 120; ++i) {
      Word u = random_word(b.alphabet, static_cast<long long>(rng() % 33), rng);
      Word v = pad_trivial(b.expr, b.alphabet, u, rng, 4);
      CHECK(run_nf(b, u) == run_nf(b, v));
      CHECK(b.oracle.eval(run_nf(b, u)) == b.oracle.eval(u));
    }
  }
}

TEST_CASE("free products of free groups use the merged Sanov basis") {
  Built b = build("FreeProd(Free(2),Z)");
  std::mt19937_64 rng(103);
  for (int i = 0; i < 60; ++i) {
    Word u = random_word(b.alphabet, 24, rng);
    Word v = pad_trivial(b.expr, b.alphabet, u, rng, 3);
    CHECK(run_nf(b, u) == run_nf(b, v));
    CHECK(b.oracle.eval(run_nf(b, u)) == b.oracle.eval(u));
  }
}
