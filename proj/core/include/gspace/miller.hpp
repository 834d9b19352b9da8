#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "gspace/clopen.hpp"
#include "gspace/enumerator.hpp"
#include "gspace/oracle.hpp"
#include "gspace/verdict.hpp"

namespace gspace {

// A finite presentation <x_1..x_k | r_1..r_t>.
struct Presentation {
  int rank = 0;
  std::vector<Word> relators;
};

// Text format: "<a,b | a^2, [a,b]>"; the relator list may be empty.
Presentation parse_presentation(const std::string& text);
std::string print_presentation(const Presentation& p);

// Step-1 relator stream over indexed generators e_0, e_1, ...: emits
// e_0 e_i⁻¹ as i is enumerated into P and e_1 e_j⁻¹ as j enters Q
// (identity relators e_0 e_0⁻¹, e_1 e_1⁻¹ are dropped). Each emitted word
// carries the rank it needs; the presentation rank is unbounded.
RecPresentation step1_relations(const Enumerator<std::uint64_t>& p,
                                const Enumerator<std::uint64_t>& q);

// The gadget presentation: base's generators and relators, three new
// generators a, b, c, and the four relation families
//   (1) a⁻¹ba = c⁻¹b⁻¹cbc
//   (2) a⁻²b⁻¹aba² = c⁻²b⁻¹cbc²
//   (3) a⁻³[w,b]a³ = c⁻³bc³          ([w,b] = w⁻¹b⁻¹wb)
//   (4) a⁻⁽³⁺ⁱ⁾x_i b a³⁺ⁱ = c⁻⁽³⁺ⁱ⁾bc³⁺ⁱ,  i = 1..k
// pi is the clopen set of the relators plus the single irrelation w.
struct MillerOutput {
  Presentation l3;       // rank k + 3: x_1..x_k, a, b, c
  BasicClopenSet pi;
};

MillerOutput step3_presentation(const Presentation& base, const Word& w);

// Free-product ambient left * F_free for membership searches: `left` may be
// trivial (rank 0 slot unused) to express a plain free group.
struct FreeProductAmbient {
  MarkedGroup left;   // letters 1..left.rank()
  int free_rank = 0;  // letters left.rank()+1 .. left.rank()+free_rank
  int rank() const { return left.rank() + free_rank; }

  // Reduced form with oracle-trivial left-factor syllables removed.
  Word normalize(const Word& w) const;
  bool is_identity(const Word& w) const;
};

// Bounded membership search in the subgroup generated by a Nielsen-reduced
// family: products of at most `bound` factors, pruned by the normal-form
// length. Verified(factorization) or, after exhausting the bound,
// Refuted(certified non-member) — sound both ways for Nielsen-reduced
// families, since a product of n generators has length at least n.
Verdict nielsen_membership(const Word& u, const std::vector<Word>& family,
                           const FreeProductAmbient& ambient, int bound);

// Word problem of the gadget group via its amalgamated-product
// decomposition (base * F_{a,b}) *_{A=B} F_{b,c}. Requires
// base_oracle.is_relation(w) == false.
MarkedGroup l3_wp(const MarkedGroup& base_oracle, const Word& w);

// Semi-decides that adding `extra` to the gadget relators collapses the
// group: Verified once b, c, a and every x_i are all derivable. The witness
// carries the four derivations.
Verdict trivializes(const MillerOutput& out, const Word& extra,
                    std::uint64_t fuel);

}  // namespace gspace
