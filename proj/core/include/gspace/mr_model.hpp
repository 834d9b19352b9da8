#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "gspace/oracle.hpp"

namespace gspace {

// A computable-group model (N, mult, inv, 0) or ({0..card-1}, mult, inv, 0),
// plus the images of the marking tuple. 0 is the identity.
struct MrModel {
  std::optional<std::uint64_t> card;  // nullopt = domain N
  std::function<std::uint64_t(std::uint64_t, std::uint64_t)> mult;
  std::function<std::uint64_t(std::uint64_t)> inv;
  std::vector<std::uint64_t> generator_images;
};

// Builds a model from a word problem oracle by enumerating shortlex normal
// forms (deleting oracle-equal duplicates) and defining mult/inv by
// normal-form lookup. Detects finite groups by closure and then uses the
// exact domain {0..card-1}.
MrModel mr_model_of(const MarkedGroup& g);

// The group defined by a lawful model: is_relation evaluates the word in the
// model and compares with 0. Samples the group axioms first and throws
// ModelError on violation.
MarkedGroup group_of_mr_model(const MrModel& model, int rank,
                              const std::string& name = "mr");

// The i-th shortlex normal form of g (0-based); also usable on its own.
Word normal_form_at(const MarkedGroup& g, std::uint64_t i);

}  // namespace gspace
