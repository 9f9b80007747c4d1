#include "lognf/nf_wreath.hpp"

#include <vector>

#include "lognf/nf_basic.hpp"

namespace lognf {

namespace {

// Restriction of a source to positions [1..limit].
class LimitSource : public LetterSource {
 public:
  LimitSource(LetterSource& base, long long limit) : base_(&base), limit_(limit) {}
  Letter at(long long j) override { return (j < 1 || j > limit_) ? 0 : base_->at(j); }

 private:
  LetterSource* base_;
  long long limit_;
};

// Re-runs the base machine on a projected prefix each time a value is needed:
// the plain Lemma 5.2 composition semantics.
class GenericTracker : public BaseTracker {
 public:
  GenericTracker(LetterSource& in, Exec& ex, TransducerPtr base, int lamp_rank)
      : in_(&in),
        ex_(&ex),
        base_(std::move(base)),
        lamp_rank_(lamp_rank),
        cursor_(ex, 0),
        slots_{Reg(ex, -1), Reg(ex, -1)} {}

  void reset_cursor() override { cursor_ = 0; }
  void feed(Letter, long long pos) override { cursor_ = pos; }
  void save_cursor(int slot) override { slots_[static_cast<size_t>(slot)] = cursor_.get(); }
  void copy_slot(int dst, int src) override {
    slots_[static_cast<size_t>(dst)] = slots_[static_cast<size_t>(src)].get();
  }
  void copy_slot_from(BaseTracker& other, int dst, int src) override {
    auto& o = dynamic_cast<GenericTracker&>(other);
    slots_[static_cast<size_t>(dst)] = o.slots_[static_cast<size_t>(src)].get();
  }

  int cmp_cursor_vs(int slot) override { return cmp_positions(cursor_.get(), slots_[static_cast<size_t>(slot)].get()); }

  LetterStream emit_nf(int slot, Exec& ex) override {
    LimitSource lim(*in_, slots_[static_cast<size_t>(slot)].get());
    SideProjectionSource proj(lim, ex, lamp_rank_, 1);
    auto s = base_->emit(proj, ex);
    while (s.next()) co_yield s.value();
  }

  LetterStream emit_nf_inv(int slot, Exec& ex) override {
    LimitSource lim(*in_, slots_[static_cast<size_t>(slot)].get());
    SideProjectionSource proj(lim, ex, lamp_rank_, 1);
    auto inverter = make_inverter(base_->alphabet_in());
    ReplaySource rev(*inverter, proj, ex);
    auto s = base_->emit(rev, ex);
    while (s.next()) co_yield s.value();
  }

 private:
  int cmp_positions(long long pa, long long pb) {
    // Lengths first, then the first differing letter, streaming both normal
    // forms of the projected prefixes.
    Reg na(*ex_, 0), nb(*ex_, 0);
    {
      LimitSource la(*in_, pa);
      SideProjectionSource sa(la, *ex_, lamp_rank_, 1);
      auto s = base_->emit(sa, *ex_);
      while (s.next()) ++na;
      LimitSource lb(*in_, pb);
      SideProjectionSource sb(lb, *ex_, lamp_rank_, 1);
      auto t = base_->emit(sb, *ex_);
      while (t.next()) ++nb;
    }
    if (na.get() != nb.get()) return na.get() < nb.get() ? -1 : 1;
    LimitSource la(*in_, pa);
    SideProjectionSource sa(la, *ex_, lamp_rank_, 1);
    auto s = base_->emit(sa, *ex_);
    LimitSource lb(*in_, pb);
    SideProjectionSource sb(lb, *ex_, lamp_rank_, 1);
    auto t = base_->emit(sb, *ex_);
    const Alphabet& alpha = base_->alphabet_out();
    while (s.next() && t.next()) {
      int ka = alpha.order_key(s.value()), kb = alpha.order_key(t.value());
      if (ka != kb) return ka < kb ? -1 : 1;
    }
    return 0;
  }

  LetterSource* in_;
  Exec* ex_;
  TransducerPtr base_;
  int lamp_rank_;
  Reg cursor_;
  Reg slots_[2];
};

// Incremental counters for abelian coordinate bases.
class CoordTracker : public BaseTracker {
 public:
  CoordTracker(Exec& ex, std::vector<long long> dims) : ex_(&ex), dims_(std::move(dims)) {
    for (size_t i = 0; i < dims_.size(); ++i) {
      cur_.emplace_back(ex, 0);
      slot_[0].emplace_back(ex, 0);
      slot_[1].emplace_back(ex, 0);
    }
  }

  void reset_cursor() override {
    for (auto& r : cur_) r = 0;
  }

  void feed(Letter base_letter, long long) override {
    int d = (base_letter < 0 ? -base_letter : base_letter) - 1;
    long long m = dims_[static_cast<size_t>(d)];
    long long delta = base_letter > 0 ? 1 : -1;
    auto& r = cur_[static_cast<size_t>(d)];
    if (m == 0)
      r += delta;
    else
      r = ((r.get() + delta) % m + m) % m;
  }

  void save_cursor(int slot) override {
    for (size_t i = 0; i < dims_.size(); ++i) slot_[slot][i] = cur_[i].get();
  }
  void copy_slot(int dst, int src) override {
    for (size_t i = 0; i < dims_.size(); ++i) slot_[dst][i] = slot_[src][i].get();
  }
  void copy_slot_from(BaseTracker& other, int dst, int src) override {
    auto& o = dynamic_cast<CoordTracker&>(other);
    for (size_t i = 0; i < dims_.size(); ++i) slot_[dst][i] = o.slot_[src][i].get();
  }

  int cmp_cursor_vs(int slot) override {
    long long la = 0, lb = 0;
    for (size_t i = 0; i < dims_.size(); ++i) {
      la += len_of(cur_[i].get());
      lb += len_of(slot_[slot][i].get());
    }
    if (la != lb) return la < lb ? -1 : 1;
    // Lexicographic comparison of the run patterns t1^a1 t2^a2 ...
    size_t ia = 0, ib = 0;
    long long ca = 0, cb = 0;
    int ka = 0, kb = 0;
    for (;;) {
      if (ca == 0 && !next_run(cur_, ia, ka, ca)) return 0;  // equal length, both end
      if (cb == 0 && !next_run_slot(slot, ib, kb, cb)) return 0;
      if (ka != kb) return ka < kb ? -1 : 1;
      long long m = ca < cb ? ca : cb;
      ca -= m;
      cb -= m;
    }
  }

  LetterStream emit_nf(int slot, Exec& ex) override {
    for (size_t i = 0; i < dims_.size(); ++i) {
      long long v = slot_[slot][i].get();
      Letter l = v >= 0 ? static_cast<Letter>(i + 1) : -static_cast<Letter>(i + 1);
      Reg k(ex, v >= 0 ? v : -v);
      while (k.get() > 0) {
        --k;
        co_yield l;
      }
    }
  }

  LetterStream emit_nf_inv(int slot, Exec& ex) override {
    for (size_t i = 0; i < dims_.size(); ++i) {
      long long m = dims_[i];
      long long v = slot_[slot][i].get();
      long long w = m == 0 ? -v : (m - v) % m;
      Letter l = w >= 0 ? static_cast<Letter>(i + 1) : -static_cast<Letter>(i + 1);
      Reg k(ex, w >= 0 ? w : -w);
      while (k.get() > 0) {
        --k;
        co_yield l;
      }
    }
  }

 private:
  static long long len_of(long long v) { return v >= 0 ? v : -v; }

  bool next_run(const std::vector<Reg>& c, size_t& i, int& key, long long& count) {
    while (i < dims_.size()) {
      long long v = c[i].get();
      if (v != 0) {
        key = 2 * static_cast<int>(i) + (v < 0 ? 1 : 0);
        count = len_of(v);
        ++i;
        return true;
      }
      ++i;
    }
    return false;
  }
  bool next_run_slot(int slot, size_t& i, int& key, long long& count) {
    while (i < dims_.size()) {
      long long v = slot_[slot][i].get();
      if (v != 0) {
        key = 2 * static_cast<int>(i) + (v < 0 ? 1 : 0);
        count = len_of(v);
        ++i;
        return true;
      }
      ++i;
    }
    return false;
  }

  Exec* ex_;
  std::vector<long long> dims_;
  std::vector<Reg> cur_;
  std::vector<Reg> slot_[2];
};

// Lamp letters written at the base value held in the tracker's P slot, re-indexed
// to the lamp machine's alphabet.  Equality with the target value is refreshed
// after every base letter.
class LampSource : public LetterSource {
 public:
  LampSource(LetterSource& in, Exec& ex, int lamp_rank, const TrackerFactory& mk,
             BaseTracker& main, int src_slot)
      : in_(&in), ex_(&ex), lamp_rank_(lamp_rank), pos_(ex, 0), count_(ex, 0) {
    tracker_ = mk(in, ex);
    tracker_->copy_slot_from(main, BaseTracker::kP, src_slot);
    tracker_->reset_cursor();
    match_ = tracker_->cursor_equals(BaseTracker::kP);
  }

  Letter at(long long j) override {
    ex_->tick();
    if (j < 1) fail(Err::BadIndex, "source position must be >= 1");
    if (j <= count_.get()) {
      pos_ = 0;
      count_ = 0;
      tracker_->reset_cursor();
      match_ = tracker_->cursor_equals(BaseTracker::kP);
    }
    for (;;) {
      Letter l = in_->at(pos_.get() + 1);
      if (l == 0) return 0;
      ++pos_;
      int a = l < 0 ? -l : l;
      if (a > lamp_rank_) {
        Letter inner = l > 0 ? l - lamp_rank_ : l + lamp_rank_;
        tracker_->feed(inner, pos_.get());
        match_ = tracker_->cursor_equals(BaseTracker::kP);
        continue;
      }
      if (!match_) continue;
      ++count_;
      if (count_.get() == j) return l;
    }
  }

 private:
  LetterSource* in_;
  Exec* ex_;
  int lamp_rank_;
  Reg pos_;
  Reg count_;
  std::unique_ptr<BaseTracker> tracker_;
  bool match_;
};

class WreathNf : public Transducer {
 public:
  WreathNf(TransducerPtr lamp, TransducerPtr base, const GroupExpr& base_expr,
           WreathStrategy strategy)
      : Transducer(product_alphabet(lamp->alphabet_in(), base->alphabet_in()),
                   product_alphabet(lamp->alphabet_out(), base->alphabet_out())),
        lamp_(std::move(lamp)),
        base_(std::move(base)) {
    auto dims = coord_dims(base_expr);
    bool coords = strategy == WreathStrategy::Coordinates ||
                  (strategy == WreathStrategy::Auto && dims.has_value());
    if (coords && !dims) fail(Err::Internal, "base has no counter coordinates");
    int lamp_rank = lamp_->alphabet_in().rank();
    if (coords) {
      auto d = *dims;
      make_tracker_ = [d](LetterSource&, Exec& ex) -> std::unique_ptr<BaseTracker> {
        return std::make_unique<CoordTracker>(ex, d);
      };
    } else {
      TransducerPtr b = base_;
      make_tracker_ = [b, lamp_rank](LetterSource& in, Exec& ex) -> std::unique_ptr<BaseTracker> {
        return std::make_unique<GenericTracker>(in, ex, b, lamp_rank);
      };
    }
  }

  LetterStream emit(LetterSource& in, Exec& ex) const override {
    const int lamp_rank = lamp_->alphabet_in().rank();
    const int lamp_rank_out = lamp_->alphabet_out().rank();
    auto T = make_tracker_(in, ex);
    T->reset_cursor();
    T->save_cursor(BaseTracker::kP);
    for (;;) {
      // Lamp at the current value: first decide non-triviality by counting.
      Reg cnt(ex, 0);
      {
        LampSource ls(in, ex, lamp_rank, make_tracker_, *T, BaseTracker::kP);
        auto s = lamp_->emit(ls, ex);
        while (s.next()) ++cnt;
      }
      if (cnt.get() > 0) {
        {
          auto s = T->emit_nf(BaseTracker::kP, ex);
          while (s.next()) co_yield shift(s.value(), lamp_rank_out);
        }
        {
          LampSource ls(in, ex, lamp_rank, make_tracker_, *T, BaseTracker::kP);
          auto s = lamp_->emit(ls, ex);
          while (s.next()) co_yield s.value();
        }
        {
          auto s = T->emit_nf_inv(BaseTracker::kP, ex);
          while (s.next()) co_yield shift(s.value(), lamp_rank_out);
        }
      }
      // Advance to the shortlex-next value of V(w).
      T->reset_cursor();
      bool have_q = false;
      if (T->cmp_cursor_vs(BaseTracker::kP) > 0) {  // empty prefix as candidate
        T->save_cursor(BaseTracker::kQ);
        have_q = true;
      }
      Reg j(ex, 0);
      for (;;) {
        Letter l = in.at(j.get() + 1);
        if (l == 0) break;
        ++j;
        int a = l < 0 ? -l : l;
        if (a <= lamp_rank) continue;
        T->feed(l > 0 ? l - lamp_rank : l + lamp_rank, j.get());
        if (T->cmp_cursor_vs(BaseTracker::kP) > 0 &&
            (!have_q || T->cmp_cursor_vs(BaseTracker::kQ) < 0)) {
          T->save_cursor(BaseTracker::kQ);
          have_q = true;
        }
      }
      if (!have_q) break;
      T->copy_slot(BaseTracker::kP, BaseTracker::kQ);
    }
    // Suffix: the normal form of the full base projection.
    T->reset_cursor();
    Reg j(ex, 0);
    for (;;) {
      Letter l = in.at(j.get() + 1);
      if (l == 0) break;
      ++j;
      int a = l < 0 ? -l : l;
      if (a > lamp_rank) T->feed(l > 0 ? l - lamp_rank : l + lamp_rank, j.get());
    }
    T->save_cursor(BaseTracker::kQ);
    auto s = T->emit_nf(BaseTracker::kQ, ex);
    while (s.next()) co_yield shift(s.value(), lamp_rank_out);
  }

  // Testing hooks (Lemma 5.3 / 5.4 sub-operations).
  long long next_v(const Word& w, long long p) const {
    Exec ex;
    TapeSource in(w, ex);
    const int lamp_rank = lamp_->alphabet_in().rank();
    auto T = make_tracker_(in, ex);
    T->reset_cursor();
    Reg j(ex, 0);
    while (j.get() < p) {
      Letter l = in.at(j.get() + 1);
      if (l == 0) fail(Err::BadIndex, "prefix position beyond the word");
      ++j;
      int a = l < 0 ? -l : l;
      if (a > lamp_rank) T->feed(l > 0 ? l - lamp_rank : l + lamp_rank, j.get());
    }
    T->save_cursor(BaseTracker::kP);
    T->reset_cursor();
    bool have_q = false;
    long long q_pos = -1;
    if (T->cmp_cursor_vs(BaseTracker::kP) > 0) {
      T->save_cursor(BaseTracker::kQ);
      have_q = true;
      q_pos = 0;
    }
    j = 0;
    for (;;) {
      Letter l = in.at(j.get() + 1);
      if (l == 0) break;
      ++j;
      int a = l < 0 ? -l : l;
      if (a <= lamp_rank) continue;
      T->feed(l > 0 ? l - lamp_rank : l + lamp_rank, j.get());
      if (T->cmp_cursor_vs(BaseTracker::kP) > 0 &&
          (!have_q || T->cmp_cursor_vs(BaseTracker::kQ) < 0)) {
        T->save_cursor(BaseTracker::kQ);
        have_q = true;
        q_pos = j.get();
      }
    }
    return have_q ? q_pos : -1;
  }

  Word lamp_at(const Word& w, long long p) const {
    Exec ex;
    TapeSource in(w, ex);
    const int lamp_rank = lamp_->alphabet_in().rank();
    auto T = make_tracker_(in, ex);
    T->reset_cursor();
    Reg j(ex, 0);
    while (j.get() < p) {
      Letter l = in.at(j.get() + 1);
      if (l == 0) fail(Err::BadIndex, "prefix position beyond the word");
      ++j;
      int a = l < 0 ? -l : l;
      if (a > lamp_rank) T->feed(l > 0 ? l - lamp_rank : l + lamp_rank, j.get());
    }
    T->save_cursor(BaseTracker::kP);
    Word out;
    LampSource ls(in, ex, lamp_rank, make_tracker_, *T, BaseTracker::kP);
    auto s = lamp_->emit(ls, ex);
    while (s.next()) out.push_back(s.value());
    return out;
  }

 private:
  static Letter shift(Letter l, int off) { return l > 0 ? l + off : l - off; }

  TransducerPtr lamp_;
  TransducerPtr base_;
  TrackerFactory make_tracker_;
};

}  // namespace

std::optional<std::vector<long long>> coord_dims(const GroupExpr& base) {
  switch (base.node) {
    case Node::Z:
      return std::vector<long long>{0};
    case Node::Cyclic:
      return std::vector<long long>{base.a};
    case Node::Direct: {
      auto l = coord_dims(*base.left);
      auto r = coord_dims(*base.right);
      if (!l || !r) return std::nullopt;
      l->insert(l->end(), r->begin(), r->end());
      return l;
    }
    default:
      return std::nullopt;
  }
}

TransducerPtr make_wreath_nf(TransducerPtr lamp, TransducerPtr base, const GroupExpr& base_expr,
                             WreathStrategy strategy) {
  return std::make_shared<WreathNf>(std::move(lamp), std::move(base), base_expr, strategy);
}

long long wreath_next_v(const Transducer& wreath_machine, const Word& w, long long p) {
  auto* m = dynamic_cast<const WreathNf*>(&wreath_machine);
  if (!m) fail(Err::Internal, "not a wreath machine");
  return m->next_v(w, p);
}

Word wreath_lamp_at(const Transducer& wreath_machine, const Word& w, long long p) {
  auto* m = dynamic_cast<const WreathNf*>(&wreath_machine);
  if (!m) fail(Err::Internal, "not a wreath machine");
  return m->lamp_at(w, p);
}

}  // namespace lognf
