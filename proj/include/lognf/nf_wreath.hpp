#pragma once
// Wreath product normal form G wr H: iterate the base values V(w) in shortlex
// order, extract the lamp word at each visited value, and close with the
// normal form of the full base projection.
//
// Base prefix values are represented by the input position that realizes
// them; recovering, comparing and inverting them goes through a BaseTracker.
// The generic tracker re-runs the base machine per comparison (the plain
// composition semantics); bases built from counters (Z, Cyclic, direct
// products of those) use an incremental coordinate tracker whose registers
// are metered the same way.  Both produce identical output.

#include <functional>
#include <memory>
#include <optional>

#include "lognf/expr.hpp"
#include "lognf/machine.hpp"

namespace lognf {

class BaseTracker {
 public:
  // Two persistent value slots plus the moving cursor.
  static constexpr int kP = 0;
  static constexpr int kQ = 1;

  virtual ~BaseTracker() = default;

  virtual void reset_cursor() = 0;
  // Consume one base letter (base machine's own alphabet); pos is its input
  // position in the ambient word.
  virtual void feed(Letter base_letter, long long pos) = 0;

  virtual void save_cursor(int slot) = 0;
  virtual void copy_slot(int dst, int src) = 0;
  virtual void copy_slot_from(BaseTracker& other, int dst, int src) = 0;

  // Shortlex comparison of the base normal forms: cursor value vs slot value.
  virtual int cmp_cursor_vs(int slot) = 0;
  bool cursor_equals(int slot) { return cmp_cursor_vs(slot) == 0; }

  // Normal form of the slot value (resp. of its inverse), in the base
  // machine's own alphabet.
  virtual LetterStream emit_nf(int slot, Exec& ex) = 0;
  virtual LetterStream emit_nf_inv(int slot, Exec& ex) = 0;
};

using TrackerFactory =
    std::function<std::unique_ptr<BaseTracker>(LetterSource& in, Exec& ex)>;

// Counter coordinates for bases assembled from Z and Cyclic(m) by direct
// products: modulus per dimension, 0 meaning a free Z coordinate.
std::optional<std::vector<long long>> coord_dims(const GroupExpr& base);

enum class WreathStrategy { Auto, Coordinates, Generic };

TransducerPtr make_wreath_nf(TransducerPtr lamp, TransducerPtr base, const GroupExpr& base_expr,
                             WreathStrategy strategy = WreathStrategy::Auto);

// The Lemma 5.3 / 5.4 sub-operations, exposed for direct testing.  `p` is an
// input position (0..n) encoding the base value of that prefix; next_v
// returns the position of the shortlex-least strictly larger value in V(w),
// or -1 when p's value is maximal.
long long wreath_next_v(const Transducer& wreath_machine, const Word& w, long long p);
// The lamp normal form at the value encoded by p, over the wreath alphabet.
Word wreath_lamp_at(const Transducer& wreath_machine, const Word& w, long long p);

}  // namespace lognf
