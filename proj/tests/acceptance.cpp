// Acceptance suite: one pass/fail line per criterion, nonzero exit when any
// criterion fails.  Tolerances and sample sizes are pinned here.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "lognf/nf_bs.hpp"
#include "lognf/nf_ext.hpp"
#include "lognf/nf_ut.hpp"
#include "lognf/wp.hpp"
#include "support.hpp"

using namespace lognf;
using namespace testsup;

namespace {

struct Outcome {
  bool pass = true;
  long long checked = 0;
  long long failed = 0;
  std::string note;

  void require(bool ok) {
    ++checked;
    if (!ok) {
      ++failed;
      pass = false;
    }
  }
};

int g_threads = 2;

struct Family {
  const char* label;
  GroupExpr expr;
};

std::vector<Family> shipped_families() {
  std::vector<Family> fams;
  for (const char* g :
       {"Free(2)", "Direct(Z,Z)", "Wreath(Cyclic(2),Z)", "Wreath(Z,Z)", "Wreath(Z,Direct(Z,Z))",
        "FreeProd(Z,Z)", "FreeProd(Cyclic(2),Cyclic(3))", "BS(1,2)", "BS(1,3)", "UT(3)", "UT(4)",
        "Torus(2,3)"})
    fams.push_back(Family{g, E(g)});
  fams.push_back(Family{"2Z<=Z sub", fidx("Z", k2zTable, FiDirection::Sub)});
  fams.push_back(Family{"2Z<=Z super", fidx("Z", k2zTable, FiDirection::Super)});
  return fams;
}

// [1] The worked matrix example: exact value and fixed point, < 1 s.
Outcome crit1() {
  Outcome o;
  Built b = build("BS(1,2)");
  Word w = parse_word("t^-2 a t^2 t^-1 a t t a t^-1 t^3", b.alphabet);
  Word nf = run_nf(b, w);
  Element el = b.oracle.eval(nf);
  o.require(el.ints[0] == 2 && el.ints[1] == 3 && el.ints[2] == 2 && el.bigs[0] == 11);
  o.require(b.oracle.eval(w) == el);
  o.require(run_nf(b, nf) == nf);
  return o;
}

// [2] Quadratic length law, k = 1..12, exact.
Outcome crit2() {
  Outcome o;
  Built b = build("BS(1,2)");
  for (long long k = 1; k <= 12; ++k) {
    Word w;
    for (long long i = 0; i <= k; ++i) w.push_back(2);
    w.push_back(1);
    for (long long i = 0; i <= k; ++i) w.push_back(-2);
    w.push_back(-1);
    o.require(static_cast<long long>(run_nf(b, w).size()) == k * k + 2 * k + 1);
  }
  return o;
}

// [3] + [4] Bijectivity against the oracles and the idempotence / identity /
// inverse laws, 10^3 pairs per family at length <= 48.
Outcome crit3and4(bool idempotence_part) {
  Outcome o;
  for (const Family& fam : shipped_families()) {
    Built b = build(fam.expr);
    std::mt19937_64 rng(0xACCE5500 + (idempotence_part ? 7 : 0));
    o.require(run_nf(b, {}).empty());  // f(lambda) = lambda
    for (int i = 0; i < 1000; ++i) {
      Word u = random_word(b.alphabet, static_cast<long long>(rng() % 49), rng);
      Word v = (i % 2 == 0) ? pad_trivial(fam.expr, b.alphabet, u, rng, 3)
                            : random_word(b.alphabet, static_cast<long long>(rng() % 49), rng);
      if (!idempotence_part) {
        bool nf_eq = run_nf(b, u) == run_nf(b, v);
        bool o_eq = b.oracle.eval(u) == b.oracle.eval(v);
        o.require(nf_eq == o_eq);
        o.require(b.oracle.eval(run_nf(b, u)) == b.oracle.eval(u));
      } else {
        Word nf = run_nf(b, u);
        o.require(run_nf(b, nf) == nf);
        Word winv = u;
        for (Letter l : formal_inverse(u)) winv.push_back(l);
        o.require(run_nf(b, winv).empty());
      }
    }
  }
  return o;
}

// [5] Logspace certificate: median peak growth per doubling <= 64 bits at
// n = 2^6 .. 2^13; reports the fitted c in peak ~ c log2 n + d.
// [6] Output length growth exponents measured on the same sweeps.
std::vector<long long> sweep_lengths() { return {64, 128, 256, 512, 1024, 2048, 4096, 8192}; }

struct SweepSummary {
  std::string label;
  double fit_c = 0, fit_d = 0;
  double max_delta = 0;
  double out_exponent = 0;
};

Outcome crit5(std::vector<SweepSummary>& summaries) {
  Outcome o;
  auto lengths = sweep_lengths();
  for (const Family& fam : shipped_families()) {
    Built b = build(fam.expr);
    auto rows = meter_sweep(b, lengths, 20, 0x5EED, Exec::kDefaultStepLimit, g_threads);
    auto peaks = sweep_medians(rows, lengths, &SweepRow::peak_bits);
    auto outs = sweep_medians(rows, lengths, &SweepRow::output_length);
    SweepSummary s;
    s.label = fam.label;
    for (size_t i = 1; i < lengths.size(); ++i) {
      double delta = peaks[i] - peaks[i - 1];
      if (delta > s.max_delta) s.max_delta = delta;
      o.require(delta <= 64.0);
    }
    std::vector<double> lx, lout;
    for (size_t i = 0; i < lengths.size(); ++i) {
      lx.push_back(std::log2(static_cast<double>(lengths[i])));
      lout.push_back(std::log2(std::max(1.0, outs[i])));
    }
    LinFit fp = fit_linear(lx, peaks);
    LinFit fo = fit_linear(lx, lout);
    s.fit_c = fp.slope;
    s.fit_d = fp.intercept;
    s.out_exponent = fo.slope;
    summaries.push_back(s);
  }
  return o;
}

Outcome crit6(const std::vector<SweepSummary>& summaries) {
  Outcome o;
  for (const auto& s : summaries) {
    if (s.label == std::string("BS(1,2)")) o.require(s.out_exponent <= 2.2);
    if (s.label == std::string("Free(2)") || s.label == std::string("Direct(Z,Z)"))
      o.require(s.out_exponent <= 1.0);
  }
  o.note = "exponents:";
  for (const auto& s : summaries)
    if (s.label == std::string("BS(1,2)") || s.label == std::string("Free(2)") ||
        s.label == std::string("Direct(Z,Z)"))
      o.note += " " + std::string(s.label) + "=" + std::to_string(s.out_exponent);
  return o;
}

// [7] Entry bounds for UT(3) and UT(4), 10^3 words each, n <= 100.
Outcome crit7() {
  Outcome o;
  std::mt19937_64 rng(0xB07D);
  for (int r : {3, 4}) {
    Alphabet a = alphabet_of(E("UT(" + std::to_string(r) + ")"));
    for (int i = 0; i < 1000; ++i) {
      Word w = random_word(a, static_cast<long long>(1 + rng() % 100), rng);
      o.require(ut_entry_bound_check(w, r));
    }
  }
  return o;
}

// [8] Approximation loop invariant via the matrix oracle: 10^3 zero-texp
// words per p in {2,3,5}, length <= 40.
Outcome crit8() {
  Outcome o;
  std::mt19937_64 rng(0x10081);
  for (long long p : {2LL, 3LL, 5LL}) {
    Built b = build("BS(1," + std::to_string(p) + ")");
    for (int trial = 0; trial < 1000; ++trial) {
      Word u;
      for (;;) {
        u = random_word(b.alphabet, static_cast<long long>(rng() % 35), rng);
        long long t = 0;
        for (Letter l : u) t += (l == 2) - (l == -2);
        if (t >= -6 && t <= 6) {
          for (long long i = 0; i < (t >= 0 ? t : -t); ++i) u.push_back(t > 0 ? -2 : 2);
          break;
        }
      }
      Element target = b.oracle.eval(u);
      BsApproxProbe probe;
      bool all_ok = true;
      probe.on_level = [&](long long l_next, long long aexp,
                           const std::vector<std::pair<long long, long long>>& blocks) {
        Word v;
        for (auto [lvl, e] : blocks) {
          long long alpha = -lvl;
          for (long long i = 0; i < (alpha >= 0 ? alpha : -alpha); ++i)
            v.push_back(alpha >= 0 ? -2 : 2);
          for (long long i = 0; i < (e >= 0 ? e : -e); ++i) v.push_back(e >= 0 ? 1 : -1);
          for (long long i = 0; i < (alpha >= 0 ? alpha : -alpha); ++i)
            v.push_back(alpha >= 0 ? 2 : -2);
        }
        for (long long i = 0; i < (l_next >= 0 ? l_next : -l_next); ++i)
          v.push_back(l_next >= 0 ? 2 : -2);
        for (long long i = 0; i < (aexp >= 0 ? aexp : -aexp); ++i)
          v.push_back(aexp >= 0 ? 1 : -1);
        for (long long i = 0; i < (l_next >= 0 ? l_next : -l_next); ++i)
          v.push_back(l_next >= 0 ? -2 : 2);
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
        if (!(b.oracle.eval(v) == target)) all_ok = false;
      };
      bs_approximate(p, u, &probe);
      o.require(all_ok);
    }
  }
  return o;
}

// [9] The representative formula on 500 sampled N-membership words.
Outcome crit9() {
  Outcome o;
  Built b = build("Torus(2,3)");
  std::mt19937_64 rng(0x70F05);
  for (int i = 0; i < 500; ++i) {
    long long i0 = static_cast<long long>(rng() % 9) - 4;
    Word w;
    for (long long k = 0; k < 2 * (i0 >= 0 ? i0 : -i0); ++k) w.push_back(i0 >= 0 ? 1 : -1);
    w = pad_trivial(b.expr, b.alphabet, w, rng, static_cast<int>(rng() % 8));
    long long ra = 0, sb = 0;
    for (Letter l : w) {
      if (l == 1) ++ra;
      if (l == -1) --ra;
      if (l == 2) ++sb;
      if (l == -2) --sb;
    }
    o.require(ra % 2 == 0 && sb % 3 == 0);
    long long expect_i = ra / 2 + sb / 3;
    Word rep = torus_rep(w, 2, 3);
    long long got = 0;
    for (Letter l : rep) got += (l == 1) - (l == -1);
    o.require(got == 2 * expect_i);
    o.require(b.oracle.eval(rep) == b.oracle.eval(w));
  }
  return o;
}

// [10] The metered free-group word problem against stack reduction:
// 10^4 words, ranks 1..4, length <= 128.
Outcome crit10() {
  Outcome o;
  std::mt19937_64 rng(0xF2EE);
  std::vector<Alphabet> alphas;
  for (int r = 1; r <= 4; ++r) alphas.push_back(alphabet_of(E("Free(" + std::to_string(r) + ")")));
  for (int i = 0; i < 10000; ++i) {
    int rank = 1 + i % 4;
    const Alphabet& a = alphas[static_cast<size_t>(rank - 1)];
    Word w;
    if (i % 10 == 0) {
      GroupExpr e = E("Free(" + std::to_string(rank) + ")");
      w = pad_trivial(e, a, {}, rng, static_cast<int>(1 + rng() % 20));
      if (w.size() > 128) w.resize(0);  // keep within the stated length
    } else {
      w = random_word(a, static_cast<long long>(rng() % 129), rng);
    }
    o.require(free_wp_metered(w, rank) == free_reduce(w).empty());
  }
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  if (argc > 1) g_threads = std::atoi(argv[1]);
  int failures = 0;
  std::vector<SweepSummary> summaries;
  auto report = [&](int id, const char* name, Outcome (*fn)()) {
    auto t0 = std::chrono::steady_clock::now();
    Outcome o = fn();
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::printf("[%2d] %s  %s  (%lld checks, %lld failed, %.1f s)%s%s\n", id,
                o.pass ? "PASS" : "FAIL", name, o.checked, o.failed, secs,
                o.note.empty() ? "" : "  ", o.note.c_str());
    if (!o.pass) ++failures;
  };

  report(1, "BS worked example (exact matrix, fixed point)", crit1);
  report(2, "BS length law |NF(t^{k+1} a t^{-k-1} a^-1)| = (k+1)^2, k=1..12", crit2);
  {
    auto t0 = std::chrono::steady_clock::now();
    Outcome o = crit3and4(false);
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::printf("[ 3] %s  oracle bijectivity per family, 10^3 pairs, len <= 48  (%lld checks, %lld failed, %.1f s)\n",
                o.pass ? "PASS" : "FAIL", o.checked, o.failed, secs);
    if (!o.pass) ++failures;
  }
  {
    auto t0 = std::chrono::steady_clock::now();
    Outcome o = crit3and4(true);
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::printf("[ 4] %s  idempotence, identity, formal inverse  (%lld checks, %lld failed, %.1f s)\n",
                o.pass ? "PASS" : "FAIL", o.checked, o.failed, secs);
    if (!o.pass) ++failures;
  }
  {
    auto t0 = std::chrono::steady_clock::now();
    Outcome o = crit5(summaries);
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::printf("[ 5] %s  logspace certificate, peak delta <= 64 bits per doubling  (%lld checks, %lld failed, %.1f s)\n",
                o.pass ? "PASS" : "FAIL", o.checked, o.failed, secs);
    for (const auto& s : summaries)
      std::printf("      %-28s peak ~ %.2f*log2(n) %+.1f   max doubling delta %.1f bits   output ~ n^%.3f\n",
                  s.label.c_str(), s.fit_c, s.fit_d, s.max_delta, s.out_exponent);
    if (!o.pass) ++failures;
  }
  {
    auto t0 = std::chrono::steady_clock::now();
    Outcome o = crit6(summaries);
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::printf("[ 6] %s  output growth exponents (BS <= 2.2, Free/Direct <= 1.0)  (%lld checks, %lld failed, %.1f s)  %s\n",
                o.pass ? "PASS" : "FAIL", o.checked, o.failed, secs, o.note.c_str());
    if (!o.pass) ++failures;
  }
  report(7, "UT entry bounds |a| <= n^i, 10^3 words, n <= 100", crit7);
  report(8, "approximation loop invariant, 10^3 words per p in {2,3,5}", crit8);
  report(9, "torus representative formula, 500 membership words", crit9);
  report(10, "metered free word problem vs stack oracle, 10^4 words", crit10);

  std::printf("%s\n", failures == 0 ? "ALL ACCEPTANCE CRITERIA PASS" : "ACCEPTANCE FAILURES PRESENT");
  return failures == 0 ? 0 : 1;
}
