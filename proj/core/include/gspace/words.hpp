#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "gspace/errors.hpp"

namespace gspace {

// A letter of the alphabet S ∪ S⁻¹ over a rank-k marking: +i is the i-th
// generator, -i its inverse, 1 <= i <= rank.
using Letter = std::int8_t;

inline Letter inverse(Letter l) { return static_cast<Letter>(-l); }

// Fixed letter order: s_1 < s_2 < ... < s_k < s_1⁻¹ < ... < s_k⁻¹.
// All shortlex enumeration, ball construction and canonical forms use it.
inline int letter_position(Letter l, int rank) {
  return l > 0 ? l - 1 : rank + (-l) - 1;
}

// A freely reduced word over a rank-k alphabet. Value type; rank is carried
// so that cross-rank misuse is detectable.
class Word {
 public:
  Word() = default;
  explicit Word(int rank) : rank_(rank) {}

  // Free reduction of an arbitrary letter sequence.
  static Word reduce(std::span<const Letter> raw, int rank);
  static Word reduce(std::initializer_list<int> raw, int rank);

  int rank() const { return rank_; }
  std::size_t size() const { return letters_.size(); }
  bool empty() const { return letters_.empty(); }
  Letter at(std::size_t i) const { return letters_[i]; }
  const std::vector<Letter>& letters() const { return letters_; }

  Word inverse() const;
  Word operator*(const Word& rhs) const;  // concatenate and reduce
  Word pow(long e) const;
  // g⁻¹ w g
  Word conjugated_by(const Word& g) const;
  // Net exponent of generator i (1-based).
  long exponent_sum(int generator) const;

  // Reinterpret over a (not smaller) alphabet.
  Word with_rank(int rank) const;

  bool operator==(const Word& o) const {
    return rank_ == o.rank_ && letters_ == o.letters_;
  }

  bool shortlex_less(const Word& o) const;

  // Cyclic machinery, used by canonical forms and the consequence engine.
  Word cyclically_reduced() const;
  Word rotated(std::size_t i) const;  // left rotation by i letters

 private:
  std::vector<Letter> letters_;
  int rank_ = 0;
  friend Word unsafe_word(std::vector<Letter>, int);
};

// Internal: wraps a sequence already known to be reduced.
Word unsafe_word(std::vector<Letter> letters, int rank);

Word commutator(const Word& u, const Word& v);  // u⁻¹ v⁻¹ u v

// Single-generator word s_i^e.
Word generator_power(int generator, long e, int rank);

struct WordHash {
  std::size_t operator()(const Word& w) const;
};

// --- shortlex bijection ℕ <-> F_k -------------------------------------

// Number of reduced words of length exactly `len`; throws EncodingOverflow
// beyond 64 bits.
std::uint64_t reduced_word_count(int rank, int len);

std::uint64_t shortlex_index(const Word& w);
Word shortlex_word(std::uint64_t n, int rank);

// --- Cantor pairing ----------------------------------------------------

std::uint64_t cantor_pair(std::uint64_t n, std::uint64_t m);
std::pair<std::uint64_t, std::uint64_t> cantor_unpair(std::uint64_t z);

// Tuple coding ⟨n1,...,nm⟩ = ⟨n1,⟨n2,...⟩⟩ and list coding with end marker.
std::uint64_t encode_list(std::span<const std::uint64_t> xs);
std::vector<std::uint64_t> decode_list(std::uint64_t n);

// --- prime-power word decoding -----------------------------------------

// Decomposes n = p_0^a0 ... p_m^am, maps each a_i (i >= 1) mod 2k to a
// letter, concatenates and reduces. The exponent a_0 plays no role in the
// adopted definition; it is deliberately ignored. n = 0 is malformed.
Word prime_decode(std::uint64_t n, int rank);

// --- ASCII syntax -------------------------------------------------------

// Lowercase a,b,c,... are s_1,s_2,s_3,...; uppercase their inverses.
// `a^3` powers, `[u,v]` commutators, `u^v` conjugation (v⁻¹ u v), and
// parentheses are accepted. "1" denotes the empty word.
Word parse_word(std::string_view text, int rank);
std::string print_word(const Word& w);

}  // namespace gspace
