#pragma once
// Free product normal form G * H: repeatedly strip the longest initial
// segment lying in one factor (witnessed through the product's word-problem
// oracle) and emit that factor's normal form of the projection.
//
// The membership scan keeps running residues of the segment product and of
// its factor projection for the leading primes, so that the full witness
// decision runs only at positions the residues cannot reject.

#include <functional>
#include <memory>

#include "lognf/machine.hpp"
#include "lognf/wp.hpp"

namespace lognf {

// Incremental membership scan for one block: after reset(side), letters of
// the tail are fed left to right; candidate() is a sound necessary condition
// for "segment so far lies in `side`", confirm() the exact decision.
class ProductWPScan {
 public:
  virtual ~ProductWPScan() = default;
  virtual void reset(int side) = 0;
  virtual void feed(Letter l, bool is_side) = 0;
  virtual bool candidate() = 0;
  virtual bool confirm(LetterSource& in, long long start, long long end, int side, Exec& ex) = 0;
};

using ScanFactory = std::function<std::unique_ptr<ProductWPScan>(Exec&)>;

// Modular scan: the product group has a faithful 2x2 integer representation
// (free-like factors via Sanov, C2 * C3 as PSL2(Z)); membership of a segment
// is the Lemma-style witness word fed to the modular decider.
ScanFactory modular_scan_factory(std::shared_ptr<const ModularRep> rep, int left_rank);

// Exact syllable-cancellation scan for Cyclic(m) * Cyclic(n).  Metered but
// not logspace: the syllable stack grows with the input and its SpaceReport
// is surfaced rather than claimed.
ScanFactory syllable_scan_factory(long long m, long long n, int left_rank);

TransducerPtr make_freeprod_nf(TransducerPtr left, TransducerPtr right, ScanFactory scans);

// Length of the longest initial segment of w evaluating into the given factor
// (0 = left, 1 = right); exposed for tests.
long long freeprod_prefix_in_factor(const Transducer& freeprod_machine, const Word& w, int side);

}  // namespace lognf
