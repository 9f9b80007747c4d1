#include "lognf/nf_freeprod.hpp"

#include <vector>

#include "lognf/nf_basic.hpp"

namespace lognf {

namespace {

// Witness word for "segment [start..end] lies in factor `side`": the segment
// followed by the reversed formal inverses of its side-letters.  Backward
// access over the side letters keeps a monotone cursor and restarts on seeks.
class WitnessSource : public LetterSource {
 public:
  WitnessSource(LetterSource& in, Exec& ex, long long start, long long end, int left_rank,
                int side)
      : in_(&in),
        ex_(&ex),
        start_(start),
        end_(end),
        left_rank_(left_rank),
        side_(side),
        side_count_(ex, 0),
        back_pos_(ex, 0),
        back_idx_(ex, 0) {
    Reg p(ex, start_);
    while (p.get() <= end_) {
      if (is_side(in_->at(p.get()))) ++side_count_;
      ++p;
    }
  }

  Letter at(long long j) override {
    long long seg_len = end_ - start_ + 1;
    if (j < 1 || j > seg_len + side_count_.get()) return 0;
    if (j <= seg_len) return in_->at(start_ + j - 1);
    long long k = j - seg_len;  // k-th side letter from the end, inverted
    if (back_idx_.get() == 0 || k < back_idx_.get()) {
      back_pos_ = end_ + 1;
      back_idx_ = 0;
    }
    while (back_idx_.get() < k) {
      --back_pos_;
      if (back_pos_.get() < start_) fail(Err::Internal, "witness ran out of side letters");
      if (is_side(in_->at(back_pos_.get()))) ++back_idx_;
    }
    return -in_->at(back_pos_.get());
  }

 private:
  bool is_side(Letter l) const {
    int a = l < 0 ? -l : l;
    return (a <= left_rank_ ? 0 : 1) == side_;
  }

  LetterSource* in_;
  Exec* ex_;
  long long start_, end_;
  int left_rank_;
  int side_;
  Reg side_count_;
  Reg back_pos_;  // input position of the last side letter delivered
  Reg back_idx_;  // how many reversed side letters delivered so far
};

class ModularScan : public ProductWPScan {
 public:
  ModularScan(std::shared_ptr<const ModularRep> rep, int left_rank)
      : rep_(std::move(rep)), left_rank_(left_rank) {}

  void reset(int side) override {
    side_ = side;
    all_side_ = true;
    seg_.reset();
    proj_.reset();
  }

  void feed(Letter l, bool is_side) override {
    seg_.mul_by(rep_->mat(l));
    if (is_side)
      proj_.mul_by(rep_->mat(l));
    else
      all_side_ = false;
  }

  bool candidate() override {
    if (all_side_) return true;
    return seg_.equals(proj_, rep_->mode() == ModularRep::Mode::PlusMinusIdentity);
  }

  bool confirm(LetterSource& in, long long start, long long end, int side, Exec& ex) override {
    if (all_side_) return true;
    WitnessSource wit(in, ex, start, end, left_rank_, side);
    return rep_->trivial(wit, ex, FilterResidues::kPrimes);
  }

 private:
  std::shared_ptr<const ModularRep> rep_;
  int left_rank_;
  int side_ = 0;
  bool all_side_ = true;
  FilterResidues seg_;
  FilterResidues proj_;
};

// Exact alternating-syllable stack for Cyclic(m) * Cyclic(n).
class SyllableScan : public ProductWPScan {
 public:
  SyllableScan(long long m, long long n, int left_rank, Exec& ex)
      : m_(m), n_(n), left_rank_(left_rank), ex_(&ex) {}

  void reset(int side) override {
    side_ = side;
    stack_.clear();
  }

  void feed(Letter l, bool) override {
    int s = side_of(l);
    long long mod = s == 0 ? m_ : n_;
    long long d = l > 0 ? 1 : -1;
    if (!stack_.empty() && stack_.back().side.get() == s) {
      long long v = ((stack_.back().exp.get() + d) % mod + mod) % mod;
      if (v == 0)
        stack_.pop_back();
      else
        stack_.back().exp = v;
      return;
    }
    stack_.push_back(Syl{Reg(*ex_, s), Reg(*ex_, ((d % mod) + mod) % mod)});
  }

  bool candidate() override {
    if (stack_.empty()) return true;
    return stack_.size() == 1 && stack_[0].side.get() == side_;
  }

  bool confirm(LetterSource&, long long, long long, int, Exec&) override { return candidate(); }

 private:
  int side_of(Letter l) const {
    int a = l < 0 ? -l : l;
    return a <= left_rank_ ? 0 : 1;
  }

  struct Syl {
    Reg side;
    Reg exp;
  };

  long long m_, n_;
  int left_rank_;
  Exec* ex_;
  int side_ = 0;
  std::vector<Syl> stack_;
};

class FreeProdNf : public Transducer {
 public:
  FreeProdNf(TransducerPtr left, TransducerPtr right, ScanFactory scans)
      : Transducer(product_alphabet(left->alphabet_in(), right->alphabet_in()),
                   product_alphabet(left->alphabet_out(), right->alphabet_out())),
        left_(std::move(left)),
        right_(std::move(right)),
        scans_(std::move(scans)) {}

  LetterStream emit(LetterSource& in, Exec& ex) const override {
    const int off_in = left_->alphabet_in().rank();
    const int off_out = left_->alphabet_out().rank();
    Reg start(ex, 1);
    int side = 0;
    bool first = true;
    for (;;) {
      if (in.at(start.get()) == 0) break;
      Reg best(ex, start.get() - 1);
      scan_block(in, ex, start.get(), side, best);
      if (best.get() < start.get()) {
        // Only possible before the first strip: the word opens in the other
        // factor, so the longest left-factor prefix is empty.
        if (!first) fail(Err::Internal, "free product scan failed to advance");
        side = 1;
        first = false;
        continue;
      }
      {
        SegmentSource seg(in, start.get(), best.get());
        SideProjectionSource proj(seg, ex, off_in, side);
        auto s = (side == 0 ? left_ : right_)->emit(proj, ex);
        while (s.next()) {
          Letter l = s.value();
          co_yield side == 0 ? l : (l > 0 ? l + off_out : l - off_out);
        }
      }
      start = best.get() + 1;
      side = 1 - side;
      first = false;
    }
  }

  long long prefix_in_factor(const Word& w, int side) const {
    Exec ex;
    TapeSource in(w, ex);
    Reg best(ex, 0);
    scan_block(in, ex, 1, side, best);
    return best.get();
  }

 private:
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

  // Longest prefix of [start..] lying in `side`; `best` returns the position
  // of its final letter (start-1 when only the empty prefix qualifies).
  void scan_block(LetterSource& in, Exec& ex, long long start, int side, Reg& best) const {
    const int off_in = left_->alphabet_in().rank();
    auto scan = scans_(ex);
    scan->reset(side);
    Reg j(ex, start - 1);
    for (;;) {
      Letter l = in.at(j.get() + 1);
      if (l == 0) break;
      ++j;
      int a = l < 0 ? -l : l;
      bool is_side = (a <= off_in ? 0 : 1) == side;
      scan->feed(l, is_side);
      if (scan->candidate() && scan->confirm(in, start, j.get(), side, ex)) best = j.get();
    }
  }

  TransducerPtr left_;
  TransducerPtr right_;
  ScanFactory scans_;
};

}  // namespace

ScanFactory modular_scan_factory(std::shared_ptr<const ModularRep> rep, int left_rank) {
  return [rep, left_rank](Exec&) -> std::unique_ptr<ProductWPScan> {
    return std::make_unique<ModularScan>(rep, left_rank);
  };
}

ScanFactory syllable_scan_factory(long long m, long long n, int left_rank) {
  return [m, n, left_rank](Exec& ex) -> std::unique_ptr<ProductWPScan> {
    return std::make_unique<SyllableScan>(m, n, left_rank, ex);
  };
}

TransducerPtr make_freeprod_nf(TransducerPtr left, TransducerPtr right, ScanFactory scans) {
  return std::make_shared<FreeProdNf>(std::move(left), std::move(right), std::move(scans));
}

long long freeprod_prefix_in_factor(const Transducer& freeprod_machine, const Word& w, int side) {
  auto* m = dynamic_cast<const FreeProdNf*>(&freeprod_machine);
  if (!m) fail(Err::Internal, "not a free product machine");
  return m->prefix_in_factor(w, side);
}

}  // namespace lognf
