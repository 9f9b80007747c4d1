#pragma once
// UT_r(Z) normal form by superdiagonal peeling: evaluate the word's matrix in
// metered registers, then peel one superdiagonal at a time, emitting the
// polycyclic exponent blocks E_{1,2}^a1 E_{2,3}^a2 ... E_{1,r}^...

#include "lognf/machine.hpp"

namespace lognf {

TransducerPtr make_ut_nf(const Alphabet& a, int r);

// Lemma-style entry bound: every i-th superdiagonal entry of the evaluated
// matrix has absolute value at most |w|^i.
bool ut_entry_bound_check(const Word& w, int r);

}  // namespace lognf
