#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "gspace/enumerator.hpp"
#include "gspace/verdict.hpp"
#include "gspace/words.hpp"

namespace gspace {

// A marked group given by a total word problem oracle. The oracle must be a
// relation oracle of an actual group: is_relation(ε) holds, the relation set
// is closed under inverse, product and conjugation. Catalog constructors and
// the combinators below are correct by construction; user-supplied oracles
// are only sample-checked (see lawfulness_check in tests).
//
// MarkedGroup is a cheap value; oracles must be pure or internally
// synchronized so that values can be shared across threads.
class MarkedGroup {
 public:
  MarkedGroup() = default;
  MarkedGroup(int rank, std::string name,
              std::function<bool(const Word&)> is_relation);

  int rank() const { return rank_; }
  const std::string& name() const { return name_; }

  // Total oracle; w must fit the group's alphabet.
  bool is_relation(const Word& w) const;

  // n-th digit of the binary expansion: 1 iff the n-th shortlex word is a
  // relation.
  bool bit(std::uint64_t n) const;

  bool same_element(const Word& u, const Word& v) const {
    return is_relation(u * v.inverse());
  }

  // Optional exact accelerator: maps a word to the shortlex-least word
  // defining the same element. Catalog oracles with closed-form normal
  // forms provide it; everything else answers through the oracle alone.
  MarkedGroup with_normal_form(std::function<Word(const Word&)> nf) const;
  bool has_normal_form() const { return static_cast<bool>(nf_); }
  Word normal_form(const Word& w) const { return nf_(w); }

 private:
  int rank_ = 0;
  std::string name_;
  std::function<bool(const Word&)> rel_;
  std::function<Word(const Word&)> nf_;
};

// Effectively convergent sequence of same-rank marked groups. The regulator
// maps a target precision m to an index N with d(at(n), limit) <= 2^-m for
// all n >= N; it must be monotone nondecreasing.
struct GroupSequence {
  int rank = 0;
  std::string name;
  std::function<MarkedGroup(std::uint64_t)> at;
  std::function<std::uint64_t(std::uint64_t)> regulator;
};

// --- combinators -----------------------------------------------------------

// Direct product, marked by the concatenated tuples.
MarkedGroup direct_product(const MarkedGroup& g, const MarkedGroup& h);

// Free product, marked by the concatenated tuples. Decides by syllable
// normal form.
MarkedGroup free_product(const MarkedGroup& g, const MarkedGroup& h);

// The subgroup generated by `words`, marked by that tuple. A marking of g
// itself exactly when the tuple generates.
MarkedGroup subgroup_marking(const MarkedGroup& g,
                             const std::vector<Word>& words);

// Passage to the limit: bit n of the result is bit n of
// at(regulator(n + 1)). Total for any declared regulator; equals the metric
// limit whenever the regulator is honest.
MarkedGroup limit(const GroupSequence& seq);

// --- markings --------------------------------------------------------------

// Semi-decides that `words` generates g: searches, for every generator of g,
// an expression as a product of tuple letters, each certified by the oracle.
// Never Refuted. Witness: {"expressions": [word over the tuple alphabet per
// generator]}.
Verdict generates_semidecide(const MarkedGroup& g,
                             const std::vector<Word>& words,
                             std::uint64_t fuel);

// Resumable form of the same search, so dovetails can grant fuel
// incrementally instead of re-running from scratch.
class GeneratesSearch {
 public:
  GeneratesSearch(MarkedGroup g, std::vector<Word> words);
  // Spends up to `budget` additional oracle queries; true once verified.
  bool advance(std::uint64_t budget);
  bool verified() const { return found_ == g_.rank(); }
  std::uint64_t fuel_spent() const { return spent_; }
  nlohmann::json witness() const;

 private:
  MarkedGroup g_;
  std::vector<Word> words_;
  std::vector<std::optional<Word>> expr_;
  int found_ = 0;
  std::uint64_t cursor_ = 0;
  std::uint64_t spent_ = 0;
};

// Dovetails all j-tuples of words through generates_semidecide and emits the
// verified subgroup markings. Every j-marking of g appears eventually.
Enumerator<MarkedGroup> enumerate_markings(const MarkedGroup& g, int j);

// Decodes tuple index n into j words (Cantor list coding + shortlex).
std::vector<Word> decode_tuple(std::uint64_t n, int j, int rank);

}  // namespace gspace
