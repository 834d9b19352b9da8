#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "gspace/consequences.hpp"
#include "gspace/enumerator.hpp"
#include "gspace/oracle.hpp"
#include "gspace/verdict.hpp"

namespace gspace {

// A basic clopen set Ω^k_{R;S}: marked groups satisfying every relation in
// R and no relation in S.
struct BasicClopenSet {
  int rank = 0;
  std::vector<Word> relations;
  std::vector<Word> irrelations;

  std::string to_string() const;
};

// Text format: {R: ab, b^2 | S: ba}; either side may be empty.
BasicClopenSet parse_clopen(const std::string& text, int rank);

// Finitely many oracle queries.
bool member(const MarkedGroup& g, const BasicClopenSet& omega);

// A recursively presented group: a replayable relator stream over a fixed
// alphabet. rank == kUnboundedRank admits indexed generators e_0, e_1, ...
// (each emitted relator carries the rank it needs).
struct RecPresentation {
  static constexpr int kUnboundedRank = -1;
  int rank = 0;
  Enumerator<Word> relators;
};

// Semi-decides emptiness: Verified(incoherent) with a derivation of some
// irrelation from the relations. Never Refuted.
Verdict incoherent_semidecide(const BasicClopenSet& omega, std::uint64_t fuel);

// Atoms over a support: every support word assigned a polarity consistent
// with the given set. Returned in the deterministic order "undetermined
// support words sweep their polarities relation-first".
std::vector<BasicClopenSet> atom_decomposition(const BasicClopenSet& omega,
                                               const std::vector<Word>& support);

// Semi-decides ∪U ⊆ ∪V by decomposing both sides into atoms over the total
// support and checking that every atom of U not syntactically inside some
// member of V is incoherent (each such atom gets the stated fuel). Witness
// lists the support, the atoms, and per-atom outcomes.
Verdict inclusion_semidecide(const std::vector<BasicClopenSet>& u,
                             const std::vector<BasicClopenSet>& v,
                             std::uint64_t fuel);

// Word problem from a recursive presentation plus a recursively enumerable
// discriminating family: two deterministically interleaved searches, (a) w
// derivable from the relators (answer true), (b) some discriminating element
// derivable from relators + w (answer false). Total on lawful inputs;
// unlawful inputs may diverge.
MarkedGroup kuznetsov_wp(const RecPresentation& pres,
                         const Enumerator<Word>& discriminating,
                         const std::string& name = "kuznetsov");

// Recursive presentation of g / <<normal_gens>>: interleaves the shortlex
// enumeration of g's relations with the listed normal generators.
RecPresentation quotient_recpres(const MarkedGroup& g,
                                 const std::vector<Word>& normal_gens);

// Semi-decides finiteness of the presented group: searches for a prefix of
// the shortlex word list, containing ε, such that every word * generator is
// provably equal to a prefix member. Verified(order <= n) with the closure
// table as witness.
Verdict finite_from_recpres_semidecide(const RecPresentation& pres,
                                       std::uint64_t fuel);

}  // namespace gspace
