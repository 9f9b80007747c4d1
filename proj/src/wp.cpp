#include "lognf/wp.hpp"

namespace lognf {

IMat2 imat_mul(const IMat2& x, const IMat2& y) {
  auto mul = [](long long a, long long b) {
    long long r;
    if (__builtin_mul_overflow(a, b, &r)) fail(Err::Overflow, "matrix entry overflow");
    return r;
  };
  auto add = [](long long a, long long b) {
    long long r;
    if (__builtin_add_overflow(a, b, &r)) fail(Err::Overflow, "matrix entry overflow");
    return r;
  };
  return IMat2{add(mul(x.a, y.a), mul(x.b, y.c)), add(mul(x.a, y.b), mul(x.b, y.d)),
               add(mul(x.c, y.a), mul(x.d, y.c)), add(mul(x.c, y.b), mul(x.d, y.d))};
}

void FilterResidues::reset() {
  for (int i = 0; i < kPrimes; ++i) m[static_cast<size_t>(i)] = {1, 0, 0, 1};
}

void FilterResidues::mul_by(const IMat2& x) {
  for (int i = 0; i < kPrimes; ++i) {
    long long q = prime(i);
    auto& p = m[static_cast<size_t>(i)];
    long long xa = ((x.a % q) + q) % q, xb = ((x.b % q) + q) % q;
    long long xc = ((x.c % q) + q) % q, xd = ((x.d % q) + q) % q;
    long long a = (p[0] * xa + p[1] * xc) % q;
    long long b = (p[0] * xb + p[1] * xd) % q;
    long long c = (p[2] * xa + p[3] * xc) % q;
    long long d = (p[2] * xb + p[3] * xd) % q;
    p = {a, b, c, d};
  }
}

bool FilterResidues::is_identity() const {
  for (int i = 0; i < kPrimes; ++i) {
    const auto& p = m[static_cast<size_t>(i)];
    if (p[0] != 1 || p[1] != 0 || p[2] != 0 || p[3] != 1) return false;
  }
  return true;
}

bool FilterResidues::equals(const FilterResidues& o, bool up_to_sign) const {
  for (int i = 0; i < kPrimes; ++i) {
    long long q = prime(i);
    const auto& p = m[static_cast<size_t>(i)];
    const auto& r = o.m[static_cast<size_t>(i)];
    bool same = p == r;
    bool neg = true;
    if (up_to_sign)
      for (int k = 0; k < 4; ++k)
        if (p[static_cast<size_t>(k)] != (q - r[static_cast<size_t>(k)]) % q) neg = false;
    if (!same && !(up_to_sign && neg)) return false;
  }
  return true;
}

ModularRep::ModularRep(std::vector<IMat2> gens, std::vector<long long> weights, Mode mode)
    : gens_(std::move(gens)), weights_(std::move(weights)), mode_(mode) {
  for (const IMat2& g : gens_) {
    // All our generator matrices have determinant 1.
    invs_.push_back(IMat2{g.d, -g.b, -g.c, g.a});
  }
}

namespace {

bool is_prime_metered(long long c, Exec& ex) {
  if (c < 2) return false;
  if (c % 2 == 0) return c == 2;
  Reg d(ex, 3);
  while (d.get() * d.get() <= c) {
    ex.tick();
    if (c % d.get() == 0) return false;
    d += 2;
  }
  return true;
}

}  // namespace

bool ModularRep::trivial(LetterSource& src, Exec& ex, int verified_primes) const {
  // Pass 0: length and entry-bound budget.  The product of the embedded
  // matrix stream has entries bounded by 5^N, so primes with product beyond
  // that bound (squared, for the +-I criterion) certify the exact answer.
  Reg n(ex, 0), budget(ex, 0);
  for (;;) {
    Letter l = src.at(n.get() + 1);
    if (l == 0) break;
    ++n;
    budget += weight(l);
  }
  if (n.get() == 0) return true;
  long long N = budget.get() + 1;
  if (mode_ == Mode::PlusMinusIdentity) N = 2 * N + 1;
  // Integer over-approximation of N * log2(5), plus margin: once the floor
  // bit-sum of the used primes reaches this, their product exceeds the bound.
  long long target = (N * 2322) / 1000 + 2;

  Reg bits(ex, 0);
  Reg q(ex, 3);
  Reg j(ex, 0);
  Reg pa(ex, 1), pb(ex, 0), pc(ex, 0), pd(ex, 1);
  int credited = 0;
  while (bits.get() < target) {
    while (!is_prime_metered(q.get(), ex)) q += 2;
    long long Q = q.get();
    if (credited < verified_primes) {
      ++credited;
      bits += static_cast<long long>(std::bit_width(static_cast<unsigned long long>(Q))) - 1;
      q += 2;
      continue;
    }
    pa = 1;
    pb = 0;
    pc = 0;
    pd = 1;
    for (j = 1; j <= n.get(); ++j) {
      const IMat2& x = mat(src.at(j.get()));
      long long xa = ((x.a % Q) + Q) % Q, xb = ((x.b % Q) + Q) % Q;
      long long xc = ((x.c % Q) + Q) % Q, xd = ((x.d % Q) + Q) % Q;
      long long a = (pa.get() * xa + pb.get() * xc) % Q;
      long long b = (pa.get() * xb + pb.get() * xd) % Q;
      long long c = (pc.get() * xa + pd.get() * xc) % Q;
      long long d = (pc.get() * xb + pd.get() * xd) % Q;
      pa = a;
      pb = b;
      pc = c;
      pd = d;
    }
    bool id = pa.get() == 1 && pb.get() == 0 && pc.get() == 0 && pd.get() == 1;
    bool neg = pa.get() == Q - 1 && pb.get() == 0 && pc.get() == 0 && pd.get() == Q - 1;
    if (mode_ == Mode::Identity) {
      if (!id) return false;
    } else {
      if (!id && !neg) return false;
    }
    bits += static_cast<long long>(std::bit_width(static_cast<unsigned long long>(Q))) - 1;
    q += 2;
  }
  return true;
}

std::shared_ptr<const ModularRep> sanov_rep(int rank) {
  std::vector<int> idx;
  for (int i = 0; i < rank; ++i) idx.push_back(i);
  return sanov_rep_for(idx);
}

std::shared_ptr<const ModularRep> sanov_rep_for(const std::vector<int>& basis_index) {
  std::vector<IMat2> gens;
  std::vector<long long> weights;
  for (int i : basis_index) {
    long long ii = i;
    // b^i a b^-i over the Sanov pair; closed form keeps entries exact.
    gens.push_back(IMat2{1 - 4 * ii, 2, -8 * ii * ii, 4 * ii + 1});
    weights.push_back(2 * ii + 1);
  }
  return std::make_shared<ModularRep>(std::move(gens), std::move(weights),
                                      ModularRep::Mode::Identity);
}

std::shared_ptr<const ModularRep> psl2_rep() {
  std::vector<IMat2> gens = {IMat2{0, -1, 1, 0}, IMat2{0, -1, 1, -1}};
  return std::make_shared<ModularRep>(std::move(gens), std::vector<long long>{1, 1},
                                      ModularRep::Mode::PlusMinusIdentity);
}

bool free_wp_metered(const Word& w, int rank, Exec& ex) {
  auto rep = sanov_rep(rank);
  TapeSource src(w, ex);
  return rep->trivial(src, ex);
}

bool free_wp_metered(const Word& w, int rank, unsigned long long step_limit) {
  Exec ex(step_limit);
  return free_wp_metered(w, rank, ex);
}

}  // namespace lognf
