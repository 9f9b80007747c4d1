#pragma once
// Bit-accounted workspace for transducer executions.
//
// Every unbounded piece of running-machine state (counters, tape positions,
// accumulators) must live in a Reg allocated against an Exec, so that the
// execution's peak workspace in bits is an honest measurement.  Constant-size
// state (booleans, single letters, fixed modular residues) plays the role of
// the finite state control and stays outside the meter.

#include <bit>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>

namespace lognf {

enum class Err {
  UnknownToken,
  StepBudgetExceeded,
  SyntaxError,
  ArityError,
  MissingOracle,
  UnknownGenerator,
  MalformedExponent,
  NotInSubgroup,
  DivisibilityViolation,
  NonZeroTExp,
  NonPositiveBeta,
  FamilyMismatch,
  BadIndex,
  Overflow,
  BadTable,
  Io,
  Internal,
};

class Error : public std::runtime_error {
 public:
  Error(Err kind, const std::string& msg) : std::runtime_error(msg), kind_(kind) {}
  Err kind() const { return kind_; }

 private:
  Err kind_;
};

[[noreturn]] inline void fail(Err kind, const std::string& msg) { throw Error(kind, msg); }

struct SpaceReport {
  long long input_length = 0;
  long long peak_bits = 0;
  unsigned long long steps = 0;
  long long output_length = 0;

  std::string csv() const {
    return std::to_string(input_length) + "," + std::to_string(peak_bits) + "," +
           std::to_string(steps) + "," + std::to_string(output_length);
  }
  bool operator==(const SpaceReport&) const = default;
};

// One execution: a step counter with a polynomial guard plus the high-water
// mark over all live registers.  Sub-executions spawned by a machine (replay
// composition, simultaneous equality streams) share the parent's Exec.
class Exec {
 public:
  static constexpr unsigned long long kDefaultStepLimit = 1'000'000'000ULL;

  explicit Exec(unsigned long long step_limit = kDefaultStepLimit) : limit_(step_limit) {}

  Exec(const Exec&) = delete;
  Exec& operator=(const Exec&) = delete;

  void tick() {
    if (++steps_ > limit_) fail(Err::StepBudgetExceeded, "step budget exceeded");
  }
  void tick(unsigned long long k) {
    steps_ += k;
    if (steps_ > limit_) fail(Err::StepBudgetExceeded, "step budget exceeded");
  }

  unsigned long long steps() const { return steps_; }
  long long current_bits() const { return cur_; }
  long long peak_bits() const { return peak_; }

 private:
  friend class Reg;
  void add_bits(long long d) {
    cur_ += d;
    if (cur_ > peak_) peak_ = cur_;
  }

  long long cur_ = 0;
  long long peak_ = 0;
  unsigned long long steps_ = 0;
  unsigned long long limit_;
};

// Metered signed integer register.  Width of a value v is
// ceil(log2(|v|+1)) + 1 sign bit, so a register holding 0 costs one bit.
class Reg {
 public:
  explicit Reg(Exec& ex, long long v = 0) : ex_(&ex), v_(v), w_(width(v)) { ex_->add_bits(w_); }
  ~Reg() {
    if (ex_) ex_->add_bits(-w_);
  }
  Reg(const Reg&) = delete;
  Reg& operator=(const Reg&) = delete;
  Reg(Reg&& o) noexcept : ex_(o.ex_), v_(o.v_), w_(o.w_) { o.ex_ = nullptr; }

  void set(long long v) {
    int w = width(v);
    ex_->add_bits(w - w_);
    v_ = v;
    w_ = w;
  }
  long long get() const { return v_; }
  operator long long() const { return v_; }

  Reg& operator=(long long v) {
    set(v);
    return *this;
  }
  Reg& operator+=(long long d) {
    set(v_ + d);
    return *this;
  }
  Reg& operator-=(long long d) {
    set(v_ - d);
    return *this;
  }
  Reg& operator++() {
    set(v_ + 1);
    return *this;
  }
  Reg& operator--() {
    set(v_ - 1);
    return *this;
  }

  static int width(long long v) {
    unsigned long long a = v < 0 ? -static_cast<unsigned long long>(v) : v;
    return static_cast<int>(std::bit_width(a)) + 1;
  }

 private:
  Exec* ex_;
  long long v_;
  int w_;
};

}  // namespace lognf
