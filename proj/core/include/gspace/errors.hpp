#pragma once

#include <stdexcept>
#include <string>

namespace gspace {

// Malformed input: bad letters, bad indices, bad grammar.
struct SpecError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Parse failure with a byte offset into the source text.
struct ParseError : SpecError {
  ParseError(const std::string& what, std::size_t position)
      : SpecError(what + " (at position " + std::to_string(position) + ")"),
        pos(position) {}
  std::size_t pos;
};

// A Malcev-Rabin model that fails sampled group axioms.
struct ModelError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Gadget construction applied to a word that is trivial in the base group.
struct GadgetDegenerateError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// 64-bit overflow in an encoding that is mathematically unbounded.
struct EncodingOverflow : std::overflow_error {
  using std::overflow_error::overflow_error;
};

}  // namespace gspace
