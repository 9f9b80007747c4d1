#pragma once
// The executable transducer model: deterministic machines over a read-only
// input source, a metered workspace and a write-only letter stream, plus the
// replay-based composition and streaming equality / inverse utilities.

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "lognf/alphabet.hpp"
#include "lognf/meter.hpp"
#include "lognf/stream.hpp"

namespace lognf {

class Transducer;
using TransducerPtr = std::shared_ptr<const Transducer>;

class Transducer {
 public:
  Transducer(Alphabet in, Alphabet out) : in_(std::move(in)), out_(std::move(out)) {}
  virtual ~Transducer() = default;

  const Alphabet& alphabet_in() const { return in_; }
  const Alphabet& alphabet_out() const { return out_; }

  // The machine body.  Must be deterministic and restartable: every call with
  // equal inputs yields the identical letter sequence.
  virtual LetterStream emit(LetterSource& in, Exec& ex) const = 0;

  // Buffered evaluation: materializes intermediate words where the machine is
  // a composition.  Identical output to the metered path, used by oracles and
  // tests for speed.
  virtual Word apply_buffered(const Word& w) const;

 private:
  Alphabet in_;
  Alphabet out_;
};

struct RunResult {
  Word output;
  SpaceReport report;
};

// Runs t on w with a fresh execution; checks the precondition that every
// letter of w belongs to t's input alphabet.
RunResult run(const Transducer& t, const Word& w,
              unsigned long long step_limit = Exec::kDefaultStepLimit);

// Streaming equality of f(u) and f(v): both executions advance side by side
// inside one shared metered execution; no output word is stored.
bool equal_nf(const Transducer& f, const Word& u, const Word& v,
              unsigned long long step_limit = Exec::kDefaultStepLimit);

// Shortlex comparison of f(u) and f(v): -1, 0, 1.  First streams both outputs
// counting lengths, then streams again to the first differing letter.
int shortlex_compare(const Transducer& f, const Word& u, const Word& v,
                     unsigned long long step_limit = Exec::kDefaultStepLimit);

// Normal form of the formal inverse: f composed with the streaming
// reverse-inverter.
RunResult inverse_nf(const Transducer& f, const Word& w,
                     unsigned long long step_limit = Exec::kDefaultStepLimit);

// Replay cursor over the output of a machine (the composition counter).  A
// monotone read continues the live execution; a backward seek restarts it
// from scratch.  letter_at(output_length + 1) returns the exhaustion marker.
class ReplaySource : public LetterSource {
 public:
  ReplaySource(const Transducer& t, LetterSource& in, Exec& ex)
      : t_(&t), in_(&in), ex_(&ex), cursor_(ex, 0), length_(ex, -1) {}

  Letter at(long long j) override;

 private:
  void restart() {
    live_.reset();
    cursor_ = 0;
    cur_ = 0;
  }

  const Transducer* t_;
  LetterSource* in_;
  Exec* ex_;
  std::optional<LetterStream> live_;
  Reg cursor_;   // letters delivered so far by the live execution
  Reg length_;   // output length once known, else -1
  Letter cur_ = 0;
};

// f . g : computes f(g(w)) by replaying g for every letter f requests.
TransducerPtr compose(TransducerPtr outer, TransducerPtr inner);

// Identity copier over an alphabet.
TransducerPtr make_copier(const Alphabet& a);

// Streaming reverse-inverter: w -> formal inverse of w.
TransducerPtr make_inverter(const Alphabet& a);

// Letter substitution: each letter of the input alphabet maps to a fixed word
// over the output alphabet (inverses map to formal inverses automatically).
TransducerPtr make_substitution(const Alphabet& in, const Alphabet& out,
                                std::vector<Word> positive_images);

// Normal-form wrapper that sends the stored word u = f(lambda) to lambda and
// leaves every other word unchanged; composed on the left of f it makes the
// identity's normal form empty.
TransducerPtr make_lambda_filter(const Alphabet& a, Word identity_image);

// Wraps f so that f(lambda) = lambda, evaluating f(lambda) once at build time.
TransducerPtr normalize_identity(TransducerPtr f);

// Generating-set change (one generator at a time, iterated by callers that
// add several).  `add` introduces a letter with the given image word over
// f's alphabet (g_Y = g_X . subst); `remove` deletes the last letter of f's
// input alphabet given its image over the remaining letters (g_X = subst . g_Y).
enum class GenChange { Add, Remove };
TransducerPtr change_generators(TransducerPtr f, const std::string& name, const Word& image,
                                GenChange dir);

}  // namespace lognf
