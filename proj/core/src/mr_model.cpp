#include "gspace/mr_model.hpp"

#include <map>
#include <memory>
#include <mutex>

namespace gspace {

namespace {

// Shared lazy list of shortlex normal forms of a marked group. Extension is
// write-idempotent, so answers never depend on query order.
struct NormalForms {
  MarkedGroup g;
  std::vector<Word> forms;
  std::uint64_t next_index = 0;  // next shortlex index to inspect
  bool closed = false;           // ball closure found: the list is complete
  std::mutex mu;

  explicit NormalForms(MarkedGroup grp) : g(std::move(grp)) {}

  // Closure test: every form * generator lands on a known form.
  bool closure_reached_locked() {
    for (const Word& w : forms) {
      for (int i = 1; i <= g.rank(); ++i) {
        for (int sgn : {1, -1}) {
          Word t = w * generator_power(i, sgn, g.rank());
          bool found = false;
          for (const Word& v : forms) {
            if (g.same_element(t, v)) {
              found = true;
              break;
            }
          }
          if (!found) return false;
        }
      }
    }
    return true;
  }

  void extend_to_locked(std::uint64_t count) {
    while (forms.size() < count && !closed) {
      Word w = shortlex_word(next_index++, g.rank());
      bool dup = false;
      for (const Word& v : forms) {
        if (g.same_element(w, v)) {
          dup = true;
          break;
        }
      }
      if (!dup) {
        forms.push_back(w);
        // A fresh element can only appear at the next word length, so the
        // closure test is meaningful whenever a full length class was
        // scanned; testing after each insertion keeps it simple.
        if (closure_reached_locked()) closed = true;
      }
    }
  }

  Word at(std::uint64_t i) {
    std::lock_guard<std::mutex> lock(mu);
    extend_to_locked(i + 1);
    if (closed && i >= forms.size()) {
      throw SpecError("index beyond the order of a finite group");
    }
    return forms[i];
  }

  std::uint64_t index_of(const Word& w) {
    std::lock_guard<std::mutex> lock(mu);
    std::uint64_t i = 0;
    while (true) {
      extend_to_locked(i + 1);
      if (closed && i >= forms.size()) {
        throw SpecError("element not found in a closed normal-form table");
      }
      if (g.same_element(w, forms[i])) return i;
      ++i;
    }
  }

  std::optional<std::uint64_t> cardinality() {
    std::lock_guard<std::mutex> lock(mu);
    // Probe a little so small finite groups close quickly.
    extend_to_locked(forms.size() + 1);
    if (closed) return forms.size();
    return std::nullopt;
  }
};

}  // namespace

Word normal_form_at(const MarkedGroup& g, std::uint64_t i) {
  NormalForms nf(g);
  return nf.at(i);
}

MrModel mr_model_of(const MarkedGroup& g) {
  auto nf = std::make_shared<NormalForms>(g);
  // Drive the table to closure for finite groups: extend until either closed
  // or a modest horizon proves nothing (infinite groups keep domain N).
  std::optional<std::uint64_t> card;
  {
    std::lock_guard<std::mutex> lock(nf->mu);
    // Extend through whole length classes; stop as soon as closure holds.
    for (int len = 0; len <= 2 * g.rank() + 8 && !nf->closed; ++len) {
      std::uint64_t total = 0;
      for (int l = 0; l <= len; ++l) total += reduced_word_count(g.rank(), l);
      nf->extend_to_locked(total);
    }
    if (nf->closed) card = nf->forms.size();
  }
  MrModel m;
  m.card = card;
  m.mult = [nf](std::uint64_t i, std::uint64_t j) {
    return nf->index_of(nf->at(i) * nf->at(j));
  };
  m.inv = [nf](std::uint64_t i) { return nf->index_of(nf->at(i).inverse()); };
  for (int i = 1; i <= g.rank(); ++i) {
    m.generator_images.push_back(nf->index_of(generator_power(i, 1, g.rank())));
  }
  return m;
}

MarkedGroup group_of_mr_model(const MrModel& model, int rank,
                              const std::string& name) {
  if (static_cast<int>(model.generator_images.size()) != rank) {
    throw ModelError("generator image count does not match rank");
  }
  auto in_domain = [&](std::uint64_t x) {
    return !model.card || x < *model.card;
  };
  // Sampled lawfulness: identity, inverses, associativity on a small grid.
  std::uint64_t probe = model.card ? *model.card : 6;
  for (std::uint64_t x : model.generator_images) {
    if (!in_domain(x)) throw ModelError("generator image outside the domain");
  }
  for (std::uint64_t x = 0; x < probe; ++x) {
    if (model.mult(0, x) != x || model.mult(x, 0) != x) {
      throw ModelError("0 is not an identity in the model");
    }
    if (model.mult(x, model.inv(x)) != 0 || model.mult(model.inv(x), x) != 0) {
      throw ModelError("inv is not an inverse in the model");
    }
    for (std::uint64_t y = 0; y < probe; ++y) {
      for (std::uint64_t z = 0; z < probe; ++z) {
        if (model.mult(model.mult(x, y), z) !=
            model.mult(x, model.mult(y, z))) {
          throw ModelError("associativity fails on sampled triple");
        }
      }
    }
  }
  MrModel m = model;
  return MarkedGroup(rank, name, [m](const Word& w) {
    std::uint64_t acc = 0;
    for (Letter l : w.letters()) {
      std::uint64_t im =
          m.generator_images[static_cast<std::size_t>((l > 0 ? l : -l) - 1)];
      acc = m.mult(acc, l > 0 ? im : m.inv(im));
    }
    return acc == 0;
  });
}

}  // namespace gspace
