#include "lognf/machine.hpp"

#include <algorithm>

namespace lognf {

Word Transducer::apply_buffered(const Word& w) const { return run(*this, w).output; }

RunResult run(const Transducer& t, const Word& w, unsigned long long step_limit) {
  for (Letter l : w)
    if (!t.alphabet_in().contains(l))
      fail(Err::UnknownToken, "letter outside the machine's input alphabet");
  Exec ex(step_limit);
  TapeSource in(w, ex);
  RunResult r;
  auto s = t.emit(in, ex);
  while (s.next()) {
    ex.tick();
    r.output.push_back(s.value());
  }
  r.report.input_length = static_cast<long long>(w.size());
  r.report.peak_bits = ex.peak_bits();
  r.report.steps = ex.steps();
  r.report.output_length = static_cast<long long>(r.output.size());
  return r;
}

bool equal_nf(const Transducer& f, const Word& u, const Word& v, unsigned long long step_limit) {
  Exec ex(step_limit);
  TapeSource su(u, ex), sv(v, ex);
  auto a = f.emit(su, ex);
  auto b = f.emit(sv, ex);
  for (;;) {
    bool ha = a.next();
    bool hb = b.next();
    if (ha != hb) return false;
    if (!ha) return true;
    if (a.value() != b.value()) return false;
  }
}

int shortlex_compare(const Transducer& f, const Word& u, const Word& v,
                     unsigned long long step_limit) {
  Exec ex(step_limit);
  // Pass 1: stream both outputs, counting letters instead of writing them.
  Reg nu(ex, 0), nv(ex, 0);
  {
    TapeSource su(u, ex);
    auto a = f.emit(su, ex);
    while (a.next()) ++nu;
    TapeSource sv(v, ex);
    auto b = f.emit(sv, ex);
    while (b.next()) ++nv;
  }
  if (nu.get() != nv.get()) return nu.get() < nv.get() ? -1 : 1;
  // Pass 2: simultaneous streams to the first differing letter.
  TapeSource su(u, ex), sv(v, ex);
  auto a = f.emit(su, ex);
  auto b = f.emit(sv, ex);
  const Alphabet& alpha = f.alphabet_out();
  while (a.next() && b.next()) {
    int ka = alpha.order_key(a.value()), kb = alpha.order_key(b.value());
    if (ka != kb) return ka < kb ? -1 : 1;
  }
  return 0;
}

Letter ReplaySource::at(long long j) {
  ex_->tick();
  if (j < 1) fail(Err::BadIndex, "replay position must be >= 1");
  if (length_.get() >= 0 && j > length_.get()) return 0;
  if (live_ && j < cursor_.get()) restart();
  if (!live_) {
    restart();
    live_.emplace(t_->emit(*in_, *ex_));
  }
  while (cursor_.get() < j) {
    if (!live_->next()) {
      length_ = cursor_.get();
      live_.reset();
      return 0;
    }
    ++cursor_;
    cur_ = live_->value();
  }
  return cur_;
}

namespace {

class Composed : public Transducer {
 public:
  Composed(TransducerPtr outer, TransducerPtr inner)
      : Transducer(inner->alphabet_in(), outer->alphabet_out()),
        outer_(std::move(outer)),
        inner_(std::move(inner)) {}

  LetterStream emit(LetterSource& in, Exec& ex) const override {
    ReplaySource mid(*inner_, in, ex);
    auto s = outer_->emit(mid, ex);
    while (s.next()) co_yield s.value();
  }

  Word apply_buffered(const Word& w) const override {
    return outer_->apply_buffered(inner_->apply_buffered(w));
  }

 private:
  TransducerPtr outer_;
  TransducerPtr inner_;
};

class Copier : public Transducer {
 public:
  explicit Copier(const Alphabet& a) : Transducer(a, a) {}
  LetterStream emit(LetterSource& in, Exec& ex) const override {
    Reg j(ex, 1);
    for (;;) {
      Letter l = in.at(j.get());
      if (l == 0) break;
      ++j;
      co_yield l;
    }
  }
};

class Inverter : public Transducer {
 public:
  explicit Inverter(const Alphabet& a) : Transducer(a, a) {}
  LetterStream emit(LetterSource& in, Exec& ex) const override {
    Reg n(ex, 0);
    while (in.at(n.get() + 1) != 0) ++n;
    Reg i(ex, n.get());
    while (i.get() >= 1) {
      Letter l = in.at(i.get());
      --i;
      co_yield -l;
    }
  }
};

class Substitution : public Transducer {
 public:
  Substitution(const Alphabet& in, const Alphabet& out, std::vector<Word> images)
      : Transducer(in, out), images_(std::move(images)) {
    if (static_cast<int>(images_.size()) != in.rank())
      fail(Err::Internal, "substitution needs one image per generator");
    for (const Word& w : images_)
      for (Letter l : w)
        if (!out.contains(l)) fail(Err::UnknownGenerator, "substitution image outside target alphabet");
  }

  LetterStream emit(LetterSource& in, Exec& ex) const override {
    Reg j(ex, 1);
    for (;;) {
      Letter l = in.at(j.get());
      if (l == 0) break;
      ++j;
      int a = l < 0 ? -l : l;
      const Word& img = images_[static_cast<size_t>(a - 1)];
      if (l > 0) {
        for (Letter m : img) co_yield m;
      } else {
        for (auto it = img.rbegin(); it != img.rend(); ++it) co_yield -*it;
      }
    }
  }

 private:
  std::vector<Word> images_;
};

// Sends the fixed stored word u to lambda, copies everything else verbatim.
// u has constant length, so holding it letter-for-letter is finite control.
class LambdaFilter : public Transducer {
 public:
  LambdaFilter(const Alphabet& a, Word u) : Transducer(a, a), u_(std::move(u)) {}

  LetterStream emit(LetterSource& in, Exec& ex) const override {
    Reg n(ex, 0);
    while (in.at(n.get() + 1) != 0) ++n;
    if (n.get() == static_cast<long long>(u_.size())) {
      bool same = true;
      Reg i(ex, 1);
      for (; i.get() <= n.get(); ++i) {
        if (in.at(i.get()) != u_[static_cast<size_t>(i.get() - 1)]) {
          same = false;
          break;
        }
      }
      if (same) co_return;
    }
    Reg j(ex, 1);
    for (;;) {
      Letter l = in.at(j.get());
      if (l == 0) break;
      ++j;
      co_yield l;
    }
  }

 private:
  Word u_;
};

}  // namespace

RunResult inverse_nf(const Transducer& f, const Word& w, unsigned long long step_limit) {
  auto inv = make_inverter(f.alphabet_in());
  Exec ex(step_limit);
  TapeSource in(w, ex);
  ReplaySource mid(*inv, in, ex);
  RunResult r;
  auto s = f.emit(mid, ex);
  while (s.next()) {
    ex.tick();
    r.output.push_back(s.value());
  }
  r.report.input_length = static_cast<long long>(w.size());
  r.report.peak_bits = ex.peak_bits();
  r.report.steps = ex.steps();
  r.report.output_length = static_cast<long long>(r.output.size());
  return r;
}

TransducerPtr compose(TransducerPtr outer, TransducerPtr inner) {
  const auto& mid_out = inner->alphabet_out().names();
  const auto& mid_in = outer->alphabet_in().names();
  for (const auto& n : mid_out)
    if (std::find(mid_in.begin(), mid_in.end(), n) == mid_in.end() ||
        outer->alphabet_in().index_of(n) != inner->alphabet_out().index_of(n))
      fail(Err::UnknownToken, "composition alphabet mismatch at generator '" + n + "'");
  return std::make_shared<Composed>(std::move(outer), std::move(inner));
}

TransducerPtr make_copier(const Alphabet& a) { return std::make_shared<Copier>(a); }
TransducerPtr make_inverter(const Alphabet& a) { return std::make_shared<Inverter>(a); }

TransducerPtr make_substitution(const Alphabet& in, const Alphabet& out,
                                std::vector<Word> positive_images) {
  return std::make_shared<Substitution>(in, out, std::move(positive_images));
}

TransducerPtr make_lambda_filter(const Alphabet& a, Word identity_image) {
  return std::make_shared<LambdaFilter>(a, std::move(identity_image));
}

TransducerPtr normalize_identity(TransducerPtr f) {
  Word u = f->apply_buffered({});
  if (u.empty()) return f;
  auto filter = make_lambda_filter(f->alphabet_out(), std::move(u));
  return compose(std::move(filter), std::move(f));
}

TransducerPtr change_generators(TransducerPtr f, const std::string& name, const Word& image,
                                GenChange dir) {
  for (Letter l : image)
    if (!f->alphabet_in().contains(l))
      fail(Err::UnknownGenerator, "substitution image uses an unknown generator");
  if (dir == GenChange::Add) {
    std::vector<std::string> names = f->alphabet_in().names();
    if (f->alphabet_in().index_of(name) != 0)
      fail(Err::UnknownGenerator, "generator '" + name + "' already present");
    names.push_back(name);
    Alphabet wide(names);
    std::vector<Word> images;
    for (int i = 1; i < wide.rank(); ++i) images.push_back({static_cast<Letter>(i)});
    images.push_back(image);
    auto subst = make_substitution(wide, f->alphabet_in(), std::move(images));
    return compose(std::move(f), std::move(subst));
  }
  // Remove: `name` must be the generator being deleted; its image is spelled
  // over the remaining letters, which keep their indices.
  std::vector<std::string> names = f->alphabet_in().names();
  if (names.empty() || names.back() != name)
    fail(Err::UnknownGenerator, "can only remove the most recently added generator");
  names.pop_back();
  Alphabet narrow(names);
  for (Letter l : image)
    if (!narrow.contains(l)) fail(Err::UnknownGenerator, "image must avoid the removed generator");
  std::vector<Word> images;
  for (int i = 1; i <= narrow.rank(); ++i) images.push_back({static_cast<Letter>(i)});
  images.push_back(image);
  auto subst = make_substitution(f->alphabet_in(), narrow, std::move(images));
  return compose(std::move(subst), std::move(f));
}

}  // namespace lognf
