#pragma once

#include <cstdint>
#include <optional>
#include <queue>
#include <unordered_map>
#include <vector>

#include <nlohmann/json.hpp>

#include "gspace/words.hpp"

namespace gspace {

// Deterministic, fuel-bounded enumeration of the normal closure of a relator
// set. Sound (everything derived lies in the closure) and complete in the
// limit.
//
// Internally the enumeration works on cyclic conjugacy classes: every
// conjugate of a derived word is derived for free, products are taken
// between rotated representatives across a bridging conjugator, and the
// bridge sweep restores completeness for products of conjugates. Membership
// and derivations are recovered per word. Candidates are prioritized by
// total length (bridges weighted) then insertion order; one unit of fuel is
// one evaluated candidate product.
class ConsequenceEngine {
 public:
  ConsequenceEngine(int rank, std::vector<Word> seeds);

  // Deterministic mid-run seeding (used by recursive presentations).
  void add_seed(const Word& w);

  // Runs until `budget` total fuel is spent (slightly more if a candidate
  // batch straddles the boundary).
  void advance_to(std::uint64_t budget);

  std::uint64_t fuel_spent() const { return spent_; }
  int rank() const { return rank_; }

  // w lies in the enumerated fragment of the normal closure.  Pure lookup.
  bool contains(const Word& w) const;

  // Derived class representatives in derivation order.
  std::size_t class_count() const { return classes_.size(); }
  const Word& class_rep(std::size_t i) const { return classes_[i].rep; }

  // Word-level derivation of w (requires contains(w)): a JSON list of steps
  //   {id, word, rule: axiom|inverse|product|conjugate, args, letter}
  // whose final step is w itself. Checkable by free-group arithmetic alone.
  nlohmann::json derivation(const Word& w) const;

  // Replays a derivation object; true iff every step follows from previous
  // steps by the stated rule, axioms are among `axioms`, and the last step
  // equals `target`.
  static bool check_derivation(const nlohmann::json& d,
                               const std::vector<Word>& axioms,
                               const Word& target, int rank);

 private:
  struct Move {
    enum Kind { Axiom, Inverse, Product } kind = Axiom;
    // Axiom: seed = original relator.
    // Inverse: a = class index.
    // Product: rep(a) rotated by rot_a, times bridge * rep(b) rotated by
    // rot_b * bridge⁻¹.
    std::size_t a = 0, b = 0;
    std::size_t rot_a = 0, rot_b = 0;
    Word bridge;
    Word seed;
  };
  struct ClassEntry {
    Word rep;  // cyclically reduced, minimal rotation
    Move how;
  };
  struct Batch {
    std::uint64_t weight;
    std::uint64_t seq;
    std::size_t u, v;       // unordered class pair, v <= u
    std::uint64_t bridge;   // shortlex index of the bridging conjugator
    bool operator>(const Batch& o) const {
      return weight != o.weight ? weight > o.weight : seq > o.seq;
    }
  };

  static Word canonical_cyclic(const Word& w);

  void insert_class(Word rep, Move how);
  void push_batch(std::size_t u, std::size_t v, std::uint64_t bridge);
  void evaluate_batch(const Batch& b);
  std::uint64_t length_cap() const;

  // Word-level derivation helpers.
  std::size_t emit_class_derivation(std::size_t cls, nlohmann::json& steps,
                                    std::vector<std::optional<std::size_t>>&
                                        done) const;
  static std::size_t emit_conj_chain(std::size_t from_id, const Word& from,
                                     const Word& by, nlohmann::json& steps);

  int rank_;
  std::uint64_t spent_ = 0;
  std::uint64_t seq_ = 0;
  std::uint64_t cap_base_ = 0;
  std::vector<ClassEntry> classes_;
  std::unordered_map<Word, std::size_t, WordHash> index_;
  std::priority_queue<Batch, std::vector<Batch>, std::greater<Batch>> heap_;
};

// The fuel-bounded fragment of the normal closure, as required by the
// incoherence and trivialization procedures.
class ConsequenceSet {
 public:
  ConsequenceSet(int rank, std::vector<Word> relators, std::uint64_t fuel);

  bool contains(const Word& w) const { return engine_.contains(w); }
  nlohmann::json derivation(const Word& w) const { return engine_.derivation(w); }
  std::uint64_t fuel_spent() const { return engine_.fuel_spent(); }
  // Derived representatives (one per cyclic class); every one is in the
  // normal closure.
  std::vector<Word> words() const;

 private:
  ConsequenceEngine engine_;
};

ConsequenceSet consequences(const std::vector<Word>& relators, int rank,
                            std::uint64_t fuel);

}  // namespace gspace
