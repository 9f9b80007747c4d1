#pragma once
// Finite-index transfer through Schreier rewriting (both directions), the
// central-extension combinator, and the torus-knot instance.

#include <memory>

#include "lognf/element.hpp"
#include "lognf/expr.hpp"
#include "lognf/machine.hpp"

namespace lognf {

// Schreier rewriting of a parent-alphabet word that represents a subgroup
// element into the subgroup letters; Err::NotInSubgroup when the coset walk
// ends away from the subgroup.
Word schreier_rewrite(const Word& w, const CosetTable& t, const Alphabet& parent);

// Subgroup direction: g = tau . h . expand over the Schreier letters.
// Super direction: h(w) = g(tau(w r^-1)) r over the joint alphabet
// (subgroup letters first, then the parent's).
TransducerPtr make_finite_index_nf(TransducerPtr parent_nf, std::shared_ptr<CosetTable> table,
                                   FiDirection direction);

// Central-extension combinator: on input w emits the quotient part
// q(h(p(w))) and then f(b^-1 w), the letters of b^-1 supplied by replaying
// the first phase through the streaming inverter.  The quotient machine and
// the representative machine share the ambient alphabet.
TransducerPtr make_extension_nf(TransducerPtr quotient_nf, TransducerPtr rep_machine);

// Torus knot group <a,b | a^m = b^n>: quotient normal form over C_m * C_n
// followed by the central a^{mi} representative computed from two exponent
// counters.  The degenerate quotients (m = 1 or n = 1) are built here; the
// factory supplies the free-product quotient machine otherwise.
TransducerPtr make_torus_nf(const Alphabet& a, long long m, long long n);
TransducerPtr make_torus_nf_with_quotient(const Alphabet& a, long long m, long long n,
                                          TransducerPtr quotient);

// The representative map on N = <a^m>: w must evaluate into N; returns
// a^{mi} with i = (sum of a-exponents)/m + (sum of b-exponents)/n.
// Err::DivisibilityViolation when the sums are not divisible.
Word torus_rep(const Word& w, long long m, long long n);

}  // namespace lognf
