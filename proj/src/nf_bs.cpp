#include "lognf/nf_bs.hpp"

namespace lognf {

namespace {

constexpr Letter kA = 1;
constexpr Letter kT = 2;

struct ApproxEv {
  int kind;     // 0 = block written, 1 = level finished
  long long a;  // block: level of the a-letters; level event: next level value
  long long b;  // block: exponent (nonzero); level event: carried aexp
};

// Algorithm core: sweep levels from the bottom, carrying the a-exponent
// upward with division by p.  Emits block / level events; the caller spells
// blocks and tracks beta (the exponent of the last block written).
Gen<ApproxEv> approx_core(long long p, LetterSource& u, Exec& ex) {
  Reg texp(ex, 0), lmin(ex, 0), lmax(ex, 0), j(ex, 1);
  for (;;) {
    Letter x = u.at(j.get());
    if (x == 0) break;
    ++j;
    if (x == kT) {
      ++texp;
      if (texp.get() > lmax.get()) lmax = texp.get();
    } else if (x == -kT) {
      --texp;
      if (texp.get() < lmin.get()) lmin = texp.get();
    }
  }
  if (texp.get() != 0) fail(Err::NonZeroTExp, "approximation needs zero t-exponent sum");

  Reg l(ex, lmin.get()), aexp(ex, 0);
  while (l.get() <= lmax.get()) {
    Reg scan(ex, 0);
    for (j = 1;; ++j) {
      Letter x = u.at(j.get());
      if (x == 0) break;
      if (x == kT)
        ++scan;
      else if (x == -kT)
        --scan;
      else if (x == kA) {
        if (scan.get() == l.get()) ++aexp;
      } else if (x == -kA) {
        if (scan.get() == l.get()) --aexp;
      }
    }
    if (l.get() < lmax.get()) {
      long long r = ((aexp.get() % p) + p) % p;
      long long q = (aexp.get() - r) / p;
      if (r != 0) co_yield ApproxEv{0, l.get(), r};
      aexp = q;
    } else {
      if (aexp.get() != 0) co_yield ApproxEv{0, l.get(), aexp.get()};
      aexp = 0;
    }
    co_yield ApproxEv{1, l.get() + 1, aexp.get()};
    ++l;
  }
}

// Verbatim spelling of (a^e)^{t^alpha} with alpha = -level.
LetterStream spell_block(long long level, long long e, bool flip_a, Exec& ex) {
  Reg k(ex, level >= 0 ? level : -level);
  Letter tl = level >= 0 ? -kT : kT;  // t^{-alpha} = t^{level}
  while (k.get() > 0) {
    --k;
    co_yield level >= 0 ? kT : -kT;
  }
  Letter al = e >= 0 ? kA : -kA;
  if (flip_a) al = -al;
  Reg m(ex, e >= 0 ? e : -e);
  while (m.get() > 0) {
    --m;
    co_yield al;
  }
  k = level >= 0 ? level : -level;
  while (k.get() > 0) {
    --k;
    co_yield tl;
  }
}

class BsNf : public Transducer {
 public:
  BsNf(const Alphabet& a, long long p) : Transducer(a, a), p_(p) {}

  LetterStream emit(LetterSource& in, Exec& ex) const override {
    // texp and input length, one pass.
    Reg texp(ex, 0), n(ex, 0);
    for (;;) {
      Letter x = in.at(n.get() + 1);
      if (x == 0) break;
      ++n;
      if (x == kT)
        ++texp;
      else if (x == -kT)
        --texp;
    }
    long long tail = texp.get();
    RunSource comp(tail >= 0 ? -kT : kT, tail >= 0 ? tail : -tail, ex);
    ConcatSource u(in, n.get(), comp);

    // Suppressed run to learn beta.
    Reg beta(ex, 0);
    {
      auto ev = approx_core(p_, u, ex);
      while (ev.next())
        if (ev.value().kind == 0) beta = ev.value().b;
    }

    if (beta.get() != 0) {
      bool flip = beta.get() < 0;
      ReversedInverseSource iu(u, n.get() + (tail >= 0 ? tail : -tail));
      LetterSource& src = flip ? static_cast<LetterSource&>(iu) : u;
      // One-block lookahead: every block but the last passes through
      // verbatim; the last is the beta block and gets the digit expansion.
      Reg prev_l(ex, 0), prev_e(ex, 0);
      bool have = false;
      auto ev = approx_core(p_, src, ex);
      while (ev.next()) {
        if (ev.value().kind != 0) continue;
        if (have) {
          auto s = spell_block(prev_l.get(), prev_e.get(), flip, ex);
          while (s.next()) co_yield s.value();
        }
        prev_l = ev.value().a;
        prev_e = ev.value().b;
        have = true;
      }
      if (!have) fail(Err::Internal, "nonzero beta but no blocks");
      // h_S on the final block: beta >= 1 here (the reversed-inverse word is
      // used when the original beta was negative).
      Reg b(ex, prev_e.get()), c(ex, -prev_l.get());
      if (b.get() < 1) fail(Err::Internal, "final block exponent not positive");
      while (b.get() >= p_) {
        long long r = b.get() % p_;
        if (r > 0) {
          auto s = spell_block(-c.get(), r, flip, ex);
          while (s.next()) co_yield s.value();
        }
        b = b.get() / p_;
        --c;
      }
      auto s = spell_block(-c.get(), b.get(), flip, ex);
      while (s.next()) co_yield s.value();
    }

    // Trailing t^texp.
    Reg k(ex, tail >= 0 ? tail : -tail);
    Letter tl = tail >= 0 ? kT : -kT;
    while (k.get() > 0) {
      --k;
      co_yield tl;
    }
  }

 private:
  long long p_;
};

}  // namespace

LevelStats bs_level_stats(const Word& w) {
  LevelStats s;
  for (Letter x : w) {
    if (x == kT) {
      ++s.texp;
      if (s.texp > s.l_max) s.l_max = s.texp;
    } else if (x == -kT) {
      --s.texp;
      if (s.texp < s.l_min) s.l_min = s.texp;
    } else if (x != kA && x != -kA) {
      fail(Err::UnknownToken, "BS words use letters a and t only");
    }
  }
  return s;
}

std::pair<Word, long long> bs_approximate(long long p, const Word& u, const BsApproxProbe* probe) {
  Exec ex;
  TapeSource src(u, ex);
  Word out;
  long long beta = 0;
  std::vector<std::pair<long long, long long>> blocks;
  auto ev = approx_core(p, src, ex);
  while (ev.next()) {
    ApproxEv e = ev.value();
    if (e.kind == 0) {
      beta = e.b;
      blocks.emplace_back(e.a, e.b);
      auto s = spell_block(e.a, e.b, false, ex);
      while (s.next()) out.push_back(s.value());
    } else if (probe && probe->on_level) {
      probe->on_level(e.a, e.b, blocks);
    }
  }
  return {std::move(out), beta};
}

Word bs_expand_hs(long long p, const Word& v_prefix, long long beta, long long alpha_s) {
  if (beta < 1) fail(Err::NonPositiveBeta, "digit expansion needs beta >= 1");
  Exec ex;
  Word out = v_prefix;
  long long b = beta, c = alpha_s;
  while (b >= p) {
    long long r = b % p;
    if (r > 0) {
      auto s = spell_block(-c, r, false, ex);
      while (s.next()) out.push_back(s.value());
    }
    b /= p;
    --c;
  }
  auto s = spell_block(-c, b, false, ex);
  while (s.next()) out.push_back(s.value());
  return out;
}

TransducerPtr make_bs_nf(const Alphabet& a, long long p) { return std::make_shared<BsNf>(a, p); }

}  // namespace lognf
