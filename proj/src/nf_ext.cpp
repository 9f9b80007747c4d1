#include "lognf/nf_ext.hpp"

#include <vector>

namespace lognf {

namespace {

// Schreier data shared by the finite-index machines: for each (coset,
// positive generator) edge the subgroup letter it contributes (0 when the
// Schreier word is freely trivial), and the expansion words of the subgroup
// letters.  All constant-size relative to the input.
struct SchreierData {
  std::shared_ptr<CosetTable> table;
  Alphabet parent;
  std::vector<std::vector<int>> edge_letter;  // [coset-1][gen-1] -> letter or 0
  std::vector<Word> expansions;               // subgroup letter -> parent word

  SchreierData(std::shared_ptr<CosetTable> t, Alphabet par)
      : table(std::move(t)), parent(std::move(par)) {
    int m = 0;
    edge_letter.assign(static_cast<size_t>(table->index),
                       std::vector<int>(static_cast<size_t>(parent.rank()), 0));
    for (int c = 1; c <= table->index; ++c)
      for (int g = 1; g <= parent.rank(); ++g) {
        Word w = table->reps[static_cast<size_t>(c - 1)];
        w.push_back(g);
        int target = table->step(c, g);
        const Word& q = table->reps[static_cast<size_t>(target - 1)];
        for (auto it = q.rbegin(); it != q.rend(); ++it) w.push_back(-*it);
        Word red = free_reduce(w);
        if (!red.empty()) {
          edge_letter[static_cast<size_t>(c - 1)][static_cast<size_t>(g - 1)] = ++m;
          expansions.push_back(std::move(red));
        }
      }
  }

  int rank() const { return static_cast<int>(expansions.size()); }

  // One walk step; emits the subgroup letter of the traversed edge (or 0).
  Letter traverse(int& coset, Letter y) const {
    if (y > 0) {
      int out = edge_letter[static_cast<size_t>(coset - 1)][static_cast<size_t>(y - 1)];
      coset = table->step(coset, y);
      return static_cast<Letter>(out);
    }
    int from = table->step(coset, y);  // the coset whose y-edge we cross backwards
    int out = edge_letter[static_cast<size_t>(from - 1)][static_cast<size_t>(-y - 1)];
    coset = from;
    return out == 0 ? 0 : static_cast<Letter>(-out);
  }
};

// Y -> X rewriting machine: walk the coset graph, emitting the Schreier
// letter of every nontrivial edge.  Input must finish at the subgroup coset.
class TauMachine : public Transducer {
 public:
  TauMachine(std::shared_ptr<const SchreierData> sd, Alphabet sub)
      : Transducer(sd->parent, std::move(sub)), sd_(std::move(sd)) {}

  LetterStream emit(LetterSource& in, Exec& ex) const override {
    int coset = 1;  // finite control
    Reg j(ex, 1);
    for (;;) {
      Letter y = in.at(j.get());
      if (y == 0) break;
      ++j;
      Letter out = sd_->traverse(coset, y);
      if (out != 0) co_yield out;
    }
    if (coset != 1) fail(Err::NotInSubgroup, "word leaves the subgroup");
  }

 private:
  std::shared_ptr<const SchreierData> sd_;
};

// Joint-alphabet source view: subgroup letters expand to their parent words,
// parent letters pass through.  Random access with a monotone scan cursor.
class JointExpandSource : public LetterSource {
 public:
  JointExpandSource(LetterSource& in, Exec& ex, std::shared_ptr<const SchreierData> sd)
      : in_(&in), ex_(&ex), sd_(std::move(sd)), pos_(ex, 0), emitted_(ex, 0), inner_(ex, 0) {}

  Letter at(long long j) override {
    ex_->tick();
    if (j < 1) fail(Err::BadIndex, "source position must be >= 1");
    if (j <= emitted_.get()) {
      pos_ = 0;
      emitted_ = 0;
      inner_ = 0;
    }
    for (;;) {
      Letter l = in_->at(pos_.get() + 1);
      if (l == 0) return 0;
      int a = l < 0 ? -l : l;
      int sub_rank = sd_->rank();
      if (a > sub_rank) {
        // parent letter
        ++pos_;
        inner_ = 0;
        ++emitted_;
        Letter out = l > 0 ? l - sub_rank : l + sub_rank;
        if (emitted_.get() == j) return out;
        continue;
      }
      const Word& img = sd_->expansions[static_cast<size_t>(a - 1)];
      long long len = static_cast<long long>(img.size());
      if (inner_.get() == len) {
        ++pos_;
        inner_ = 0;
        continue;
      }
      ++inner_;
      ++emitted_;
      Letter out = l > 0 ? img[static_cast<size_t>(inner_.get() - 1)]
                         : -img[static_cast<size_t>(len - inner_.get())];
      if (emitted_.get() == j) return out;
    }
  }

 private:
  LetterSource* in_;
  Exec* ex_;
  std::shared_ptr<const SchreierData> sd_;
  Reg pos_;      // joint letters fully consumed
  Reg emitted_;  // parent letters delivered
  Reg inner_;    // progress inside the current expansion
};

// Ambient normal form over the joint generating set: trace the input to find
// its coset representative r, feed tau(w r^-1) into the subgroup machine,
// then write r.
class SuperNf : public Transducer {
 public:
  SuperNf(TransducerPtr parent_nf, std::shared_ptr<const SchreierData> sd, Alphabet joint,
          TransducerPtr sub_nf, TransducerPtr tau)
      : Transducer(joint, joint),
        parent_nf_(std::move(parent_nf)),
        sd_(std::move(sd)),
        sub_nf_(std::move(sub_nf)),
        tau_(std::move(tau)) {}

  LetterStream emit(LetterSource& in, Exec& ex) const override {
    // Walk the expanded word to find the final coset.
    int coset = 1;
    {
      JointExpandSource jx(in, ex, sd_);
      Reg j(ex, 1);
      for (;;) {
        Letter y = jx.at(j.get());
        if (y == 0) break;
        ++j;
        sd_->traverse(coset, y);
      }
    }
    const Word& r = sd_->table->reps[static_cast<size_t>(coset - 1)];
    // Subgroup part: sub_nf(tau(w r^-1)).
    {
      JointExpandSource jx(in, ex, sd_);
      Reg n(ex, 0);
      while (jx.at(n.get() + 1) != 0) ++n;
      TapeSource rt(r, ex);
      ReversedInverseSource rinv(rt, static_cast<long long>(r.size()));
      ConcatSource wr(jx, n.get(), rinv);
      ReplaySource x_letters(*tau_, wr, ex);
      auto s = sub_nf_->emit(x_letters, ex);
      while (s.next()) co_yield s.value();
    }
    // Trailing representative, over the parent letters of the joint alphabet.
    int sub_rank = sd_->rank();
    for (Letter l : r) co_yield l > 0 ? l + sub_rank : l - sub_rank;
  }

 private:
  TransducerPtr parent_nf_;
  std::shared_ptr<const SchreierData> sd_;
  TransducerPtr sub_nf_;
  TransducerPtr tau_;
};

// Lemma-style central extension: quotient part first, then the
// representative of the remainder, whose input is the inverted quotient part
// followed by the original word.
class ExtensionNf : public Transducer {
 public:
  ExtensionNf(TransducerPtr quotient, TransducerPtr rep)
      : Transducer(quotient->alphabet_in(), quotient->alphabet_in()),
        quotient_(std::move(quotient)),
        rep_(std::move(rep)) {}

  LetterStream emit(LetterSource& in, Exec& ex) const override {
    {
      ReplaySource b(*quotient_, in, ex);
      Reg j(ex, 1);
      for (;;) {
        Letter l = b.at(j.get());
        if (l == 0) break;
        ++j;
        co_yield l;
      }
    }
    ReplaySource b(*quotient_, in, ex);
    Reg k(ex, 0);
    while (b.at(k.get() + 1) != 0) ++k;
    ReversedInverseSource binv(b, k.get());
    Reg n(ex, 0);
    while (in.at(n.get() + 1) != 0) ++n;
    ConcatSource full(binv, k.get(), in);
    auto s = rep_->emit(full, ex);
    while (s.next()) co_yield s.value();
  }

 private:
  TransducerPtr quotient_;
  TransducerPtr rep_;
};

constexpr Letter kTorusA = 1;
constexpr Letter kTorusB = 2;

// Exponent-sum representative a^{m i}; the version used inside the torus
// machine gets the quotient sums subtracted by the caller.
class TorusNf : public Transducer {
 public:
  TorusNf(const Alphabet& a, long long m, long long n, TransducerPtr quotient)
      : Transducer(a, a), m_(m), n_(n), quotient_(std::move(quotient)) {}

  LetterStream emit(LetterSource& in, Exec& ex) const override {
    Reg ra(ex, 0), sb(ex, 0);
    // Quotient normal form, emitted and summed.
    {
      ReplaySource b(*quotient_, in, ex);
      Reg j(ex, 1);
      for (;;) {
        Letter l = b.at(j.get());
        if (l == 0) break;
        ++j;
        if (l == kTorusA)
          --ra;
        else if (l == -kTorusA)
          ++ra;
        else if (l == kTorusB)
          --sb;
        else
          ++sb;
        co_yield l;
      }
    }
    // Add the input's sums; the remainder b^-1 w lies in N = <a^m>.
    Reg j(ex, 1);
    for (;;) {
      Letter l = in.at(j.get());
      if (l == 0) break;
      ++j;
      if (l == kTorusA)
        ++ra;
      else if (l == -kTorusA)
        --ra;
      else if (l == kTorusB)
        ++sb;
      else
        --sb;
    }
    if (ra.get() % m_ != 0 || sb.get() % n_ != 0)
      fail(Err::Internal, "torus remainder sums not divisible");
    long long i = ra.get() / m_ + sb.get() / n_;
    Reg c(ex, i >= 0 ? m_ * i : -m_ * i);
    Letter al = i >= 0 ? kTorusA : -kTorusA;
    while (c.get() > 0) {
      --c;
      co_yield al;
    }
  }

 private:
  long long m_, n_;
  TransducerPtr quotient_;
};

// Quotient machines for the torus: C_m * C_n over the a/b letters, or the
// degenerate single-cyclic / trivial quotients.
class CyclicProjectionNf : public Transducer {
 public:
  // Counts only the `keep` letter modulo m; the other letter is central and
  // disappears in the quotient.
  CyclicProjectionNf(const Alphabet& a, Letter keep, long long m)
      : Transducer(a, a), keep_(keep), m_(m) {}

  LetterStream emit(LetterSource& in, Exec& ex) const override {
    long long v = 0;  // bounded by the fixed modulus
    Reg j(ex, 1);
    for (;;) {
      Letter l = in.at(j.get());
      if (l == 0) break;
      ++j;
      if (l == keep_)
        v = (v + 1) % m_;
      else if (l == -keep_)
        v = (v - 1 + m_) % m_;
    }
    Reg k(ex, v);
    while (k.get() > 0) {
      --k;
      co_yield keep_;
    }
  }

 private:
  Letter keep_;
  long long m_;
};

class NullNf : public Transducer {
 public:
  explicit NullNf(const Alphabet& a) : Transducer(a, a) {}
  LetterStream emit(LetterSource& in, Exec& ex) const override {
    Reg j(ex, 1);
    while (in.at(j.get()) != 0) ++j;
    co_return;
  }
};

}  // namespace

Word schreier_rewrite(const Word& w, const CosetTable& t, const Alphabet& parent) {
  SchreierData sd(std::make_shared<CosetTable>(t), parent);
  Word out;
  int coset = 1;
  for (Letter y : w) {
    if (!parent.contains(y)) fail(Err::UnknownToken, "letter outside the parent alphabet");
    Letter l = sd.traverse(coset, y);
    if (l != 0) out.push_back(l);
  }
  if (coset != 1) fail(Err::NotInSubgroup, "word leaves the subgroup");
  return out;
}

TransducerPtr make_finite_index_nf(TransducerPtr parent_nf, std::shared_ptr<CosetTable> table,
                                   FiDirection direction) {
  auto sd = std::make_shared<const SchreierData>(std::move(table), parent_nf->alphabet_in());
  std::vector<std::string> sub_names;
  for (int i = 1; i <= sd->rank(); ++i) sub_names.push_back("x" + std::to_string(i));
  Alphabet sub(sub_names);
  auto tau = std::make_shared<TauMachine>(sd, sub);
  auto expand = make_substitution(sub, sd->parent, sd->expansions);
  auto sub_nf = compose(tau, compose(parent_nf, expand));
  if (direction == FiDirection::Sub) return sub_nf;
  std::vector<std::string> joint_names;
  for (const auto& nme : sub.names()) joint_names.push_back("s." + nme);
  for (const auto& nme : sd->parent.names()) joint_names.push_back(nme);
  Alphabet joint(joint_names);
  return std::make_shared<SuperNf>(parent_nf, sd, joint, sub_nf, tau);
}

TransducerPtr make_extension_nf(TransducerPtr quotient_nf, TransducerPtr rep_machine) {
  return std::make_shared<ExtensionNf>(std::move(quotient_nf), std::move(rep_machine));
}

TransducerPtr make_torus_nf(const Alphabet& a, long long m, long long n) {
  TransducerPtr quotient;
  if (m == 1 && n == 1)
    quotient = std::make_shared<NullNf>(a);
  else if (m == 1)
    quotient = std::make_shared<CyclicProjectionNf>(a, kTorusB, n);
  else if (n == 1)
    quotient = std::make_shared<CyclicProjectionNf>(a, kTorusA, m);
  else
    fail(Err::Internal, "nondegenerate torus quotient is assembled by the factory");
  return std::make_shared<TorusNf>(a, m, n, std::move(quotient));
}

TransducerPtr make_torus_nf_with_quotient(const Alphabet& a, long long m, long long n,
                                          TransducerPtr quotient) {
  return std::make_shared<TorusNf>(a, m, n, std::move(quotient));
}

Word torus_rep(const Word& w, long long m, long long n) {
  long long ra = 0, sb = 0;
  for (Letter l : w) {
    if (l == kTorusA)
      ++ra;
    else if (l == -kTorusA)
      --ra;
    else if (l == kTorusB)
      ++sb;
    else if (l == -kTorusB)
      --sb;
    else
      fail(Err::UnknownToken, "torus words use letters a and b only");
  }
  if (ra % m != 0) fail(Err::DivisibilityViolation, "a-exponent sum not divisible by m");
  if (sb % n != 0) fail(Err::DivisibilityViolation, "b-exponent sum not divisible by n");
  long long i = ra / m + sb / n;
  Word out;
  long long count = m * (i >= 0 ? i : -i);
  for (long long k = 0; k < count; ++k) out.push_back(i >= 0 ? kTorusA : -kTorusA);
  return out;
}

}  // namespace lognf
