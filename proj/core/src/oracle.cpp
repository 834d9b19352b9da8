#include "gspace/oracle.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <utility>

namespace gspace {

MarkedGroup::MarkedGroup(int rank, std::string name,
                         std::function<bool(const Word&)> is_relation)
    : rank_(rank), name_(std::move(name)), rel_(std::move(is_relation)) {}

bool MarkedGroup::is_relation(const Word& w) const {
  if (w.rank() > rank_) {
    throw SpecError("word over a larger alphabet than the group's marking");
  }
  return rel_(w.rank() == rank_ ? w : w.with_rank(rank_));
}

MarkedGroup MarkedGroup::with_normal_form(
    std::function<Word(const Word&)> nf) const {
  MarkedGroup g = *this;
  g.nf_ = std::move(nf);
  return g;
}

bool MarkedGroup::bit(std::uint64_t n) const {
  return is_relation(shortlex_word(n, rank_));
}

// --- combinators -------------------------------------------------------------

namespace {

// Letters 1..kg belong to the left factor; kg+1..kg+kh to the right, shifted.
std::pair<Word, Word> project_factors(const Word& w, int kg, int kh) {
  std::vector<Letter> left, right;
  for (Letter l : w.letters()) {
    int idx = l > 0 ? l : -l;
    if (idx <= kg) {
      left.push_back(l);
    } else {
      int j = idx - kg;
      right.push_back(static_cast<Letter>(l > 0 ? j : -j));
    }
  }
  return {Word::reduce(std::span<const Letter>(left), kg),
          Word::reduce(std::span<const Letter>(right), kh)};
}

}  // namespace

MarkedGroup direct_product(const MarkedGroup& g, const MarkedGroup& h) {
  int kg = g.rank(), kh = h.rank();
  return MarkedGroup(
      kg + kh, "direct(" + g.name() + "," + h.name() + ")",
      [g, h, kg, kh](const Word& w) {
        auto [u, v] = project_factors(w, kg, kh);
        return g.is_relation(u) && h.is_relation(v);
      });
}

MarkedGroup free_product(const MarkedGroup& g, const MarkedGroup& h) {
  int kg = g.rank(), kh = h.rank();
  auto factor_of = [kg](Letter l) { return (l > 0 ? l : -l) <= kg ? 0 : 1; };
  return MarkedGroup(
      kg + kh, "free(" + g.name() + "," + h.name() + ")",
      [g, h, kg, kh, factor_of](const Word& w) {
        // Syllable normal form: repeatedly delete factor syllables that the
        // factor oracle certifies trivial, merging neighbours. Trivial iff
        // everything vanishes.
        std::vector<Letter> cur(w.letters().begin(), w.letters().end());
        while (true) {
          if (cur.empty()) return true;
          // split into maximal same-factor runs
          std::vector<std::pair<std::size_t, std::size_t>> runs;
          std::size_t start = 0;
          for (std::size_t i = 1; i <= cur.size(); ++i) {
            if (i == cur.size() || factor_of(cur[i]) != factor_of(cur[start])) {
              runs.emplace_back(start, i);
              start = i;
            }
          }
          bool deleted = false;
          for (auto [b, e] : runs) {
            std::vector<Letter> syl(cur.begin() + b, cur.begin() + e);
            bool left = factor_of(syl[0]) == 0;
            Word sylw = [&] {
              if (left) return Word::reduce(std::span<const Letter>(syl), kg);
              std::vector<Letter> shifted;
              for (Letter l : syl) {
                int j = (l > 0 ? l : -l) - kg;
                shifted.push_back(static_cast<Letter>(l > 0 ? j : -j));
              }
              return Word::reduce(std::span<const Letter>(shifted), kh);
            }();
            bool trivial = left ? g.is_relation(sylw) : h.is_relation(sylw);
            if (trivial) {
              std::vector<Letter> next(cur.begin(), cur.begin() + b);
              std::vector<Letter> rest(cur.begin() + e, cur.end());
              for (Letter l : rest) {
                if (!next.empty() && next.back() == inverse(l)) {
                  next.pop_back();
                } else {
                  next.push_back(l);
                }
              }
              cur = std::move(next);
              deleted = true;
              break;
            }
          }
          if (!deleted) return false;  // reduced nonempty normal form
        }
      });
}

MarkedGroup subgroup_marking(const MarkedGroup& g,
                             const std::vector<Word>& words) {
  int j = static_cast<int>(words.size());
  std::string name = "mark(" + g.name() + ";";
  for (std::size_t i = 0; i < words.size(); ++i) {
    name += (i ? "," : " ") + print_word(words[i]);
  }
  name += ")";
  auto table = std::make_shared<std::vector<Word>>();
  for (const Word& w : words) table->push_back(w.with_rank(g.rank()));
  return MarkedGroup(j, name, [g, table](const Word& w) {
    Word image(g.rank());
    for (Letter l : w.letters()) {
      int idx = l > 0 ? l : -l;
      const Word& t = (*table)[static_cast<std::size_t>(idx - 1)];
      image = image * (l > 0 ? t : t.inverse());
    }
    return g.is_relation(image);
  });
}

MarkedGroup limit(const GroupSequence& seq) {
  auto at = seq.at;
  auto regulator = seq.regulator;
  return MarkedGroup(seq.rank, "limit(" + seq.name + ")",
                     [at, regulator](const Word& w) {
                       std::uint64_t n = shortlex_index(w);
                       return at(regulator(n + 1)).is_relation(w);
                     });
}

// --- markings ----------------------------------------------------------------

GeneratesSearch::GeneratesSearch(MarkedGroup g, std::vector<Word> words)
    : g_(std::move(g)), words_(std::move(words)) {
  expr_.resize(static_cast<std::size_t>(g_.rank()));
}

bool GeneratesSearch::advance(std::uint64_t budget) {
  int j = static_cast<int>(words_.size());
  int k = g_.rank();
  std::uint64_t stop = spent_ + budget;
  while (spent_ < stop && found_ < k) {
    if (j == 0 && cursor_ > 0) break;  // only the empty expression exists
    Word v = j == 0 ? Word(0) : shortlex_word(cursor_, j);
    ++cursor_;
    Word image(g_.rank());
    for (Letter l : v.letters()) {
      int idx = l > 0 ? l : -l;
      const Word& t = words_[static_cast<std::size_t>(idx - 1)];
      Word tw = t.with_rank(g_.rank());
      image = image * (l > 0 ? tw : tw.inverse());
    }
    for (int i = 1; i <= k && spent_ < stop; ++i) {
      if (expr_[static_cast<std::size_t>(i - 1)]) continue;
      ++spent_;
      if (g_.is_relation(image * generator_power(i, -1, g_.rank()))) {
        expr_[static_cast<std::size_t>(i - 1)] = v;
        ++found_;
      }
    }
  }
  return verified();
}

nlohmann::json GeneratesSearch::witness() const {
  nlohmann::json expressions = nlohmann::json::array();
  for (const auto& e : expr_) {
    expressions.push_back(e ? print_word(*e) : "");
  }
  return {{"expressions", expressions}};
}

Verdict generates_semidecide(const MarkedGroup& g,
                             const std::vector<Word>& words,
                             std::uint64_t fuel) {
  GeneratesSearch search(g, words);
  if (search.advance(fuel)) {
    return Verdict::verified(search.witness(), search.fuel_spent());
  }
  return Verdict::unknown(search.fuel_spent());
}

std::vector<Word> decode_tuple(std::uint64_t n, int j, int rank) {
  std::vector<Word> out;
  std::uint64_t rest = n;
  for (int i = 0; i < j; ++i) {
    if (i + 1 == j) {
      out.push_back(shortlex_word(rest, rank));
    } else {
      auto [head, tail] = cantor_unpair(rest);
      out.push_back(shortlex_word(head, rank));
      rest = tail;
    }
  }
  return out;
}

Enumerator<MarkedGroup> enumerate_markings(const MarkedGroup& g, int j) {
  if (j < 1) throw SpecError("enumerate_markings requires j >= 1");
  return make_enumerator<MarkedGroup>([g, j]() {
    struct Task {
      std::unique_ptr<GeneratesSearch> search;
      bool emitted = false;
    };
    struct State {
      std::uint64_t stage = 0;
      std::uint64_t cursor = 0;
      std::vector<Task> tasks;
    };
    auto st = std::make_shared<State>();
    return [g, j, st]() -> std::optional<MarkedGroup> {
      // One quantum: grant tuple `cursor` a 64-query slice of its
      // persistent search.
      if (st->cursor > st->stage) {
        ++st->stage;
        st->cursor = 0;
      }
      std::uint64_t t = st->cursor++;
      while (st->tasks.size() <= t) {
        Task task;
        task.search = std::make_unique<GeneratesSearch>(
            g, decode_tuple(st->tasks.size(), j, g.rank()));
        st->tasks.push_back(std::move(task));
      }
      Task& task = st->tasks[t];
      if (task.emitted || task.search->verified()) return std::nullopt;
      if (task.search->advance(64)) {
        task.emitted = true;
        return subgroup_marking(g, decode_tuple(t, j, g.rank()));
      }
      return std::nullopt;
    };
  });
}

}  // namespace gspace
