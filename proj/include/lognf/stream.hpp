#pragma once
// Letter streams and letter sources.
//
// A transducer body is a coroutine that pulls letters from a LetterSource
// (random access, 1-based, 0 signals end of input) and co_yields output
// letters one at a time.  Suspension at each emitted letter is what makes
// replay composition and simultaneous two-stream comparison work without
// buffering output words.

#include <coroutine>
#include <cstdint>
#include <exception>
#include <span>
#include <utility>
#include <vector>

#include "lognf/meter.hpp"

namespace lognf {

// Generator letters: nonzero signed index into an alphabet; -x is the formal
// inverse of x.  0 is reserved for the end-of-input marker.
using Letter = std::int32_t;
using Word = std::vector<Letter>;

template <typename T>
class Gen {
 public:
  struct promise_type {
    T value{};
    std::exception_ptr ex;

    Gen get_return_object() { return Gen(std::coroutine_handle<promise_type>::from_promise(*this)); }
    std::suspend_always initial_suspend() noexcept { return {}; }
    std::suspend_always final_suspend() noexcept { return {}; }
    std::suspend_always yield_value(T v) {
      value = v;
      return {};
    }
    void return_void() {}
    void unhandled_exception() { ex = std::current_exception(); }
  };

  Gen() = default;
  explicit Gen(std::coroutine_handle<promise_type> h) : h_(h) {}
  Gen(Gen&& o) noexcept : h_(std::exchange(o.h_, nullptr)) {}
  Gen& operator=(Gen&& o) noexcept {
    if (this != &o) {
      destroy();
      h_ = std::exchange(o.h_, nullptr);
    }
    return *this;
  }
  Gen(const Gen&) = delete;
  Gen& operator=(const Gen&) = delete;
  ~Gen() { destroy(); }

  // Advances to the next yielded value; false once the coroutine finishes.
  bool next() {
    if (!h_ || h_.done()) return false;
    h_.resume();
    if (h_.promise().ex) std::rethrow_exception(h_.promise().ex);
    return !h_.done();
  }
  T value() const { return h_.promise().value; }

 private:
  void destroy() {
    if (h_) h_.destroy();
    h_ = nullptr;
  }
  std::coroutine_handle<promise_type> h_{};
};

using LetterStream = Gen<Letter>;

// Random-access view of an input: at(j) returns the j-th letter (1-based) or
// 0 past the end.  Implementations tick the execution per access and keep any
// unbounded cursor state in metered registers.
class LetterSource {
 public:
  virtual ~LetterSource() = default;
  virtual Letter at(long long j) = 0;
};

// Read-only tape over a materialized word.
class TapeSource : public LetterSource {
 public:
  TapeSource(std::span<const Letter> letters, Exec& ex) : letters_(letters), ex_(&ex) {}

  Letter at(long long j) override {
    ex_->tick();
    if (j < 1 || j > static_cast<long long>(letters_.size())) return 0;
    return letters_[static_cast<size_t>(j - 1)];
  }
  long long size() const { return static_cast<long long>(letters_.size()); }

 private:
  std::span<const Letter> letters_;
  Exec* ex_;
};

// Length of an arbitrary source, found by scanning to exhaustion with a
// metered counter.
inline long long source_length(LetterSource& src, Exec& ex) {
  Reg n(ex, 0);
  while (src.at(n.get() + 1) != 0) ++n;
  return n.get();
}

// Virtual concatenation of two sources.
class ConcatSource : public LetterSource {
 public:
  ConcatSource(LetterSource& a, long long a_len, LetterSource& b) : a_(&a), alen_(a_len), b_(&b) {}
  Letter at(long long j) override { return j <= alen_ ? a_->at(j) : b_->at(j - alen_); }

 private:
  LetterSource* a_;
  long long alen_;
  LetterSource* b_;
};

// Formal inverse of a source of known length: reversed order, inverted letters.
class ReversedInverseSource : public LetterSource {
 public:
  ReversedInverseSource(LetterSource& base, long long len) : base_(&base), len_(len) {}
  Letter at(long long j) override {
    if (j < 1 || j > len_) return 0;
    Letter l = base_->at(len_ - j + 1);
    return l == 0 ? 0 : -l;
  }

 private:
  LetterSource* base_;
  long long len_;
};

// Fixed synthetic run of one repeated letter (used for virtual suffixes).
class RunSource : public LetterSource {
 public:
  RunSource(Letter l, long long count, Exec& ex) : l_(l), count_(count), ex_(&ex) {}
  Letter at(long long j) override {
    ex_->tick();
    return (j >= 1 && j <= count_) ? l_ : 0;
  }

 private:
  Letter l_;
  long long count_;
  Exec* ex_;
};

}  // namespace lognf
