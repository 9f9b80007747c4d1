#include "lognf/nf_basic.hpp"

namespace lognf {

namespace {

class ZNf : public Transducer {
 public:
  explicit ZNf(const Alphabet& a) : Transducer(a, a) {}

  LetterStream emit(LetterSource& in, Exec& ex) const override {
    Reg i(ex, 0), j(ex, 1);
    for (;;) {
      Letter l = in.at(j.get());
      if (l == 0) break;
      i += l > 0 ? 1 : -1;
      ++j;
    }
    Letter out = i.get() >= 0 ? 1 : -1;
    Reg k(ex, i.get() >= 0 ? i.get() : -i.get());
    while (k.get() > 0) {
      --k;
      co_yield out;
    }
  }
};

class CyclicNf : public Transducer {
 public:
  CyclicNf(const Alphabet& a, long long m) : Transducer(a, a), m_(m) {}

  LetterStream emit(LetterSource& in, Exec& ex) const override {
    // The counter value stays below the fixed modulus: finite control.
    long long v = 0;
    Reg j(ex, 1);
    for (;;) {
      Letter l = in.at(j.get());
      if (l == 0) break;
      v = ((v + (l > 0 ? 1 : -1)) % m_ + m_) % m_;
      ++j;
    }
    for (long long i = 0; i < v; ++i) co_yield 1;
  }

 private:
  long long m_;
};

class FreeNf : public Transducer {
 public:
  FreeNf(const Alphabet& a, int rank) : Transducer(a, a), rank_(rank), rep_(sanov_rep(rank)) {}

  LetterStream emit(LetterSource& in, Exec& ex) const override {
    Reg c1(ex, 1), c2(ex, 1);
    for (;;) {
      Letter x = in.at(c1.get());
      if (x == 0) break;
      c2 = c1.get();
      // Running residues of the candidate product from c1; the full prime
      // ladder runs only when the leading primes fail to reject.
      FilterResidues acc;
      acc.mul_by(rep_->mat(x));
      bool jumped = false;
      for (;;) {
        Letter y = in.at(c2.get() + 1);
        if (y == 0) break;
        ++c2;
        acc.mul_by(rep_->mat(y));
        if (y != -x) continue;
        if (!acc.is_identity()) continue;
        SegmentSource seg(in, c1.get(), c2.get());
        if (rep_->trivial(seg, ex, FilterResidues::kPrimes)) {
          c1 = c2.get() + 1;
          jumped = true;
          break;
        }
      }
      if (!jumped) {
        co_yield x;
        ++c1;
      }
    }
  }

 private:
  // Restriction of a source to positions [lo..hi].
  class SegmentSource : public LetterSource {
   public:
    SegmentSource(LetterSource& base, long long lo, long long hi) : base_(&base), lo_(lo), hi_(hi) {}
    Letter at(long long j) override {
      long long p = lo_ + j - 1;
      if (j < 1 || p > hi_) return 0;
      return base_->at(p);
    }

   private:
    LetterSource* base_;
    long long lo_, hi_;
  };

  int rank_;
  std::shared_ptr<const ModularRep> rep_;
};

class DirectNf : public Transducer {
 public:
  DirectNf(TransducerPtr left, TransducerPtr right)
      : Transducer(product_alphabet(left->alphabet_in(), right->alphabet_in()),
                   product_alphabet(left->alphabet_out(), right->alphabet_out())),
        left_(std::move(left)),
        right_(std::move(right)) {}

  LetterStream emit(LetterSource& in, Exec& ex) const override {
    int off_in = left_->alphabet_in().rank();
    int off_out = left_->alphabet_out().rank();
    {
      SideProjectionSource lsrc(in, ex, off_in, 0);
      auto s = left_->emit(lsrc, ex);
      while (s.next()) co_yield s.value();
    }
    {
      SideProjectionSource rsrc(in, ex, off_in, 1);
      auto s = right_->emit(rsrc, ex);
      while (s.next()) {
        Letter l = s.value();
        co_yield l > 0 ? l + off_out : l - off_out;
      }
    }
  }

  Word apply_buffered(const Word& w) const override {
    int off_in = left_->alphabet_in().rank();
    int off_out = left_->alphabet_out().rank();
    Word u, v;
    for (Letter l : w) {
      int a = l < 0 ? -l : l;
      if (a <= off_in)
        u.push_back(l);
      else
        v.push_back(l > 0 ? l - off_in : l + off_in);
    }
    Word out = left_->apply_buffered(u);
    for (Letter l : right_->apply_buffered(v)) out.push_back(l > 0 ? l + off_out : l - off_out);
    return out;
  }

 private:
  TransducerPtr left_;
  TransducerPtr right_;
};

}  // namespace

Letter SideProjectionSource::at(long long j) {
  if (j < 1) fail(Err::BadIndex, "source position must be >= 1");
  if (j <= count_.get()) {
    // Backward seek: rescan from the start of the tape.
    pos_ = 0;
    count_ = 0;
  }
  for (;;) {
    Letter l = base_->at(pos_.get() + 1);
    if (l == 0) return 0;
    ++pos_;
    int a = l < 0 ? -l : l;
    int side = a <= offset_ ? 0 : 1;
    if (side != side_) continue;
    ++count_;
    if (count_.get() == j) return side_ == 0 ? l : (l > 0 ? l - offset_ : l + offset_);
  }
}

TransducerPtr make_z_nf(const Alphabet& a) { return std::make_shared<ZNf>(a); }

TransducerPtr make_cyclic_nf(const Alphabet& a, long long m) {
  return std::make_shared<CyclicNf>(a, m);
}

TransducerPtr make_free_nf(const Alphabet& a, int rank) {
  return std::make_shared<FreeNf>(a, rank);
}

TransducerPtr make_direct_nf(TransducerPtr left, TransducerPtr right) {
  return std::make_shared<DirectNf>(std::move(left), std::move(right));
}

}  // namespace lognf
