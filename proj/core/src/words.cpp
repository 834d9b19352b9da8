#include "gspace/words.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <limits>

namespace gspace {

namespace {

void check_letter(Letter l, int rank) {
  if (l == 0 || l > rank || -l > rank) {
    throw SpecError("letter index out of range for rank " +
                    std::to_string(rank));
  }
}

void push_reduced(std::vector<Letter>& out, Letter l) {
  if (!out.empty() && out.back() == inverse(l)) {
    out.pop_back();
  } else {
    out.push_back(l);
  }
}

std::uint64_t checked_add(std::uint64_t a, std::uint64_t b) {
  std::uint64_t r;
  if (__builtin_add_overflow(a, b, &r)) {
    throw EncodingOverflow("64-bit overflow in shortlex/cantor arithmetic");
  }
  return r;
}

std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b) {
  std::uint64_t r;
  if (__builtin_mul_overflow(a, b, &r)) {
    throw EncodingOverflow("64-bit overflow in shortlex/cantor arithmetic");
  }
  return r;
}

}  // namespace

Word unsafe_word(std::vector<Letter> letters, int rank) {
  Word w(rank);
  w.letters_ = std::move(letters);
  return w;
}

Word Word::reduce(std::span<const Letter> raw, int rank) {
  std::vector<Letter> out;
  out.reserve(raw.size());
  for (Letter l : raw) {
    check_letter(l, rank);
    push_reduced(out, l);
  }
  return unsafe_word(std::move(out), rank);
}

Word Word::reduce(std::initializer_list<int> raw, int rank) {
  std::vector<Letter> tmp;
  tmp.reserve(raw.size());
  for (int v : raw) {
    if (v < -127 || v > 127) throw SpecError("letter out of int8 range");
    tmp.push_back(static_cast<Letter>(v));
  }
  return reduce(std::span<const Letter>(tmp), rank);
}

Word Word::inverse() const {
  std::vector<Letter> out;
  out.reserve(letters_.size());
  for (auto it = letters_.rbegin(); it != letters_.rend(); ++it) {
    out.push_back(gspace::inverse(*it));
  }
  return unsafe_word(std::move(out), rank_);
}

Word Word::operator*(const Word& rhs) const {
  int rank = std::max(rank_, rhs.rank_);
  std::vector<Letter> out = letters_;
  out.reserve(letters_.size() + rhs.letters_.size());
  for (Letter l : rhs.letters_) push_reduced(out, l);
  return unsafe_word(std::move(out), rank);
}

Word Word::pow(long e) const {
  Word base = e < 0 ? inverse() : *this;
  long n = e < 0 ? -e : e;
  Word acc(rank_);
  for (long i = 0; i < n; ++i) acc = acc * base;
  return acc;
}

Word Word::conjugated_by(const Word& g) const {
  return g.inverse() * *this * g;
}

long Word::exponent_sum(int generator) const {
  long s = 0;
  for (Letter l : letters_) {
    if (l == generator) ++s;
    if (-l == generator) --s;
  }
  return s;
}

Word Word::with_rank(int rank) const {
  for (Letter l : letters_) check_letter(l, rank);
  return unsafe_word(letters_, rank);
}

bool Word::shortlex_less(const Word& o) const {
  if (letters_.size() != o.letters_.size()) {
    return letters_.size() < o.letters_.size();
  }
  int rank = std::max(rank_, o.rank_);
  for (std::size_t i = 0; i < letters_.size(); ++i) {
    int a = letter_position(letters_[i], rank);
    int b = letter_position(o.letters_[i], rank);
    if (a != b) return a < b;
  }
  return false;
}

Word Word::cyclically_reduced() const {
  std::size_t lo = 0, hi = letters_.size();
  while (hi - lo >= 2 && letters_[lo] == gspace::inverse(letters_[hi - 1])) {
    ++lo;
    --hi;
  }
  return unsafe_word(
      std::vector<Letter>(letters_.begin() + lo, letters_.begin() + hi),
      rank_);
}

Word Word::rotated(std::size_t i) const {
  if (letters_.empty()) return *this;
  i %= letters_.size();
  std::vector<Letter> out(letters_.begin() + i, letters_.end());
  out.insert(out.end(), letters_.begin(), letters_.begin() + i);
  return unsafe_word(std::move(out), rank_);
}

Word commutator(const Word& u, const Word& v) {
  return u.inverse() * v.inverse() * u * v;
}

Word generator_power(int generator, long e, int rank) {
  Letter l = static_cast<Letter>(e < 0 ? -generator : generator);
  if (e == 0) return Word(rank);
  check_letter(l, rank);
  std::vector<Letter> ls(static_cast<std::size_t>(e < 0 ? -e : e), l);
  return unsafe_word(std::move(ls), rank);
}

std::size_t WordHash::operator()(const Word& w) const {
  std::size_t h = std::hash<int>()(w.rank());
  for (Letter l : w.letters()) {
    h = h * 1000003u + static_cast<std::size_t>(static_cast<unsigned char>(l));
  }
  return h;
}

// --- shortlex ------------------------------------------------------------

std::uint64_t reduced_word_count(int rank, int len) {
  if (len == 0) return 1;
  std::uint64_t c = static_cast<std::uint64_t>(2 * rank);
  for (int i = 1; i < len; ++i) {
    c = checked_mul(c, static_cast<std::uint64_t>(2 * rank - 1));
  }
  return c;
}

std::uint64_t shortlex_index(const Word& w) {
  int rank = w.rank();
  if (rank < 1) {
    if (w.empty()) return 0;
    throw SpecError("shortlex_index requires rank >= 1");
  }
  std::uint64_t n = 0;
  for (int len = 0; len < static_cast<int>(w.size()); ++len) {
    n = checked_add(n, reduced_word_count(rank, len));
  }
  // Rank within the length class: first letter in base 2k, following letters
  // in base 2k-1 skipping the inverse of the previous letter.
  std::uint64_t r = 0;
  for (std::size_t i = 0; i < w.size(); ++i) {
    int pos = letter_position(w.at(i), rank);
    int base = 2 * rank;
    if (i > 0) {
      int banned = letter_position(inverse(w.at(i - 1)), rank);
      if (pos > banned) --pos;
      base = 2 * rank - 1;
    }
    r = checked_add(checked_mul(r, static_cast<std::uint64_t>(base)),
                    static_cast<std::uint64_t>(pos));
  }
  return checked_add(n, r);
}

Word shortlex_word(std::uint64_t n, int rank) {
  if (rank < 1) throw SpecError("shortlex_word requires rank >= 1");
  int len = 0;
  while (true) {
    std::uint64_t c = reduced_word_count(rank, len);
    if (n < c) break;
    n -= c;
    ++len;
  }
  // Digits most-significant first.
  std::vector<std::uint64_t> digits(static_cast<std::size_t>(len));
  for (int i = len - 1; i >= 0; --i) {
    std::uint64_t base =
        (i == 0) ? static_cast<std::uint64_t>(2 * rank)
                 : static_cast<std::uint64_t>(2 * rank - 1);
    digits[static_cast<std::size_t>(i)] = n % base;
    n /= base;
  }
  std::vector<Letter> out;
  out.reserve(static_cast<std::size_t>(len));
  auto letter_at = [&](int pos) {
    return static_cast<Letter>(pos < rank ? pos + 1 : -(pos - rank + 1));
  };
  for (int i = 0; i < len; ++i) {
    int pos = static_cast<int>(digits[static_cast<std::size_t>(i)]);
    if (i > 0) {
      int banned = letter_position(inverse(out.back()), rank);
      if (pos >= banned) ++pos;
    }
    out.push_back(letter_at(pos));
  }
  return unsafe_word(std::move(out), rank);
}

// --- Cantor pairing -------------------------------------------------------

std::uint64_t cantor_pair(std::uint64_t n, std::uint64_t m) {
  std::uint64_t s = checked_add(n, m);
  std::uint64_t t = s % 2 == 0 ? checked_mul(s / 2, s + 1)
                               : checked_mul(s, (s + 1) / 2);
  return checked_add(t, m);
}

std::pair<std::uint64_t, std::uint64_t> cantor_unpair(std::uint64_t z) {
  // Largest s with s(s+1)/2 <= z, found from the integer square root.
  std::uint64_t s = static_cast<std::uint64_t>(
      (std::sqrt(8.0 * static_cast<double>(z) + 1.0) - 1.0) / 2.0);
  auto tri = [](std::uint64_t k) { return k % 2 == 0 ? (k / 2) * (k + 1) : k * ((k + 1) / 2); };
  while (tri(s) > z) --s;
  while (tri(s + 1) <= z) ++s;
  std::uint64_t m = z - tri(s);
  return {s - m, m};
}

std::uint64_t encode_list(std::span<const std::uint64_t> xs) {
  std::uint64_t acc = 0;
  for (auto it = xs.rbegin(); it != xs.rend(); ++it) {
    acc = checked_add(cantor_pair(*it, acc), 1);
  }
  return acc;
}

std::vector<std::uint64_t> decode_list(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  while (n != 0) {
    auto [head, rest] = cantor_unpair(n - 1);
    out.push_back(head);
    n = rest;
  }
  return out;
}

// --- prime decoding --------------------------------------------------------

Word prime_decode(std::uint64_t n, int rank) {
  if (n == 0) throw SpecError("prime_decode: 0 is malformed");
  if (rank < 1) throw SpecError("prime_decode requires rank >= 1");
  // Exponents of p_0 = 2, p_1 = 3, 5, 7, ... up to the largest prime factor.
  std::vector<long> exponents;
  std::uint64_t p = 2;
  while (n > 1) {
    long e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    exponents.push_back(e);
    // next prime
    do {
      ++p;
      bool prime = p >= 2;
      for (std::uint64_t d = 2; d * d <= p; ++d) {
        if (p % d == 0) {
          prime = false;
          break;
        }
      }
      if (prime) break;
    } while (true);
  }
  std::vector<Letter> raw;
  for (std::size_t i = 1; i < exponents.size(); ++i) {
    long r = exponents[i] % (2 * rank);
    raw.push_back(static_cast<Letter>(r < rank ? r + 1 : -(r - rank + 1)));
  }
  return Word::reduce(std::span<const Letter>(raw), rank);
}

// --- ASCII syntax -----------------------------------------------------------

namespace {

struct WordParser {
  std::string_view s;
  std::size_t i = 0;
  int rank;

  void skip_ws() {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
  }
  bool eof() {
    skip_ws();
    return i >= s.size();
  }
  char peek() {
    skip_ws();
    return i < s.size() ? s[i] : '\0';
  }

  long parse_int() {
    skip_ws();
    std::size_t start = i;
    bool neg = false;
    if (i < s.size() && (s[i] == '-' || s[i] == '+')) {
      neg = s[i] == '-';
      ++i;
    }
    if (i >= s.size() || !std::isdigit(static_cast<unsigned char>(s[i]))) {
      throw ParseError("expected integer", start);
    }
    long v = 0;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) {
      v = v * 10 + (s[i] - '0');
      if (v > 1000000) throw ParseError("exponent too large", start);
      ++i;
    }
    return neg ? -v : v;
  }

  Word parse_atom() {
    skip_ws();
    if (i >= s.size()) throw ParseError("unexpected end of word", i);
    char c = s[i];
    if (c == '(') {
      ++i;
      Word w = parse_product();
      if (peek() != ')') throw ParseError("expected ')'", i);
      ++i;
      return w;
    }
    if (c == '[') {
      ++i;
      Word u = parse_product();
      if (peek() != ',') throw ParseError("expected ',' in commutator", i);
      ++i;
      Word v = parse_product();
      if (peek() != ']') throw ParseError("expected ']'", i);
      ++i;
      return commutator(u, v);
    }
    if (c == '1') {
      ++i;
      return Word(rank);
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      ++i;
      int idx = std::tolower(static_cast<unsigned char>(c)) - 'a' + 1;
      if (idx > rank) {
        throw ParseError(std::string("letter '") + c +
                             "' exceeds rank " + std::to_string(rank),
                         i - 1);
      }
      Letter l = static_cast<Letter>(
          std::isupper(static_cast<unsigned char>(c)) ? -idx : idx);
      return unsafe_word({l}, rank);
    }
    throw ParseError(std::string("unexpected character '") + c + "'", i);
  }

  Word parse_factor() {
    Word w = parse_atom();
    while (peek() == '^') {
      ++i;
      skip_ws();
      if (i < s.size() &&
          (std::isdigit(static_cast<unsigned char>(s[i])) || s[i] == '-' ||
           s[i] == '+')) {
        w = w.pow(parse_int());
      } else {
        Word g = parse_atom();
        w = w.conjugated_by(g);
      }
    }
    return w;
  }

  Word parse_product() {
    Word w(rank);
    while (true) {
      char c = peek();
      if (c == '\0' || c == ')' || c == ']' || c == ',') break;
      w = w * parse_factor();
    }
    return w;
  }
};

}  // namespace

Word parse_word(std::string_view text, int rank) {
  WordParser p{text, 0, rank};
  Word w = p.parse_product();
  if (!p.eof()) throw ParseError("trailing characters in word", p.i);
  return w;
}

std::string print_word(const Word& w) {
  if (w.empty()) return "1";
  std::string out;
  for (Letter l : w.letters()) {
    int idx = l > 0 ? l : -l;
    char c = static_cast<char>('a' + idx - 1);
    out.push_back(l > 0 ? c : static_cast<char>(std::toupper(c)));
  }
  return out;
}

}  // namespace gspace
