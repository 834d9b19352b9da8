#pragma once

#include <cstdint>

#include "gspace/metric.hpp"
#include "gspace/oracle.hpp"
#include "gspace/verdict.hpp"

namespace gspace {

// Decidable checks (finitely many oracle queries) and fuel-bounded
// semi-deciders with oracle-checkable witnesses. Search order everywhere:
// shortlex on words, lexicographic on tuples, so verdicts are reproducible
// and monotone in fuel.

// True iff every [s_i, s_j], i < j, is a relation.
bool is_abelian(const MarkedGroup& g);

// True iff every left-normed weight-(c+1) commutator of generators is a
// relation (k^{c+1} queries).
bool nilpotent_class_at_most(const MarkedGroup& g, int c);

// Decided by ball construction: closure within n elements, or > n distinct
// elements found.
bool card_at_most(const MarkedGroup& g, std::uint64_t n);

// Verified(order m) via ball closure; never Refuted.
Verdict is_finite_semidecide(const MarkedGroup& g, std::uint64_t fuel);

// Searches (w, m >= 2) with w != 1 and w^m = 1.
Verdict torsion_semidecide(const MarkedGroup& g, std::uint64_t fuel);

// Searches w != 1 commuting with every generator.
Verdict center_nontrivial_semidecide(const MarkedGroup& g, std::uint64_t fuel);

// Searches, for each generator, an expression as a product of commutators.
Verdict perfect_semidecide(const MarkedGroup& g, std::uint64_t fuel);

// Dovetails j-tuples of words through generates_semidecide.
Verdict rank_at_most_semidecide(const MarkedGroup& g, int j,
                                std::uint64_t fuel);

// Finitely generated normal subgroup combinator: enumerates finite word
// sets A, semi-verifies normality (conjugates of A-members expressible in
// <A>), semi-verifies <A> cyclic, and semi-verifies finiteness of the
// quotient presentation. Verified when all three fire.
Verdict virtually_cyclic_semidecide(const MarkedGroup& g, std::uint64_t fuel);

// Refutes the infinite-conjugacy-classes property: finds g != 1 whose
// conjugacy class stabilizes. Verified status means "not ICC" is certified.
Verdict icc_refute(const MarkedGroup& g, std::uint64_t fuel);

// Refutes orderability: finds a finite set of nontrivial elements such that
// for every sign vector, some positive product of the signed elements is
// trivial.
Verdict orderability_refute(const MarkedGroup& g, std::uint64_t fuel);

// Refutes delta-hyperbolicity inside ball(g, radius): a triangle with
// vertices in the radius/2 ball, one side geodesic, and a point on it at
// certified distance > delta from the two other sides. Requires
// radius >= 2 * delta.
Verdict not_delta_hyperbolic(const MarkedGroup& g, int delta, int radius);

}  // namespace gspace
