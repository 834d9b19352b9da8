#include "gspace/clopen.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <mutex>
#include <sstream>
#include <unordered_map>

namespace gspace {

std::string BasicClopenSet::to_string() const {
  std::string out = "{R:";
  for (std::size_t i = 0; i < relations.size(); ++i) {
    out += (i ? ", " : " ") + print_word(relations[i]);
  }
  out += " | S:";
  for (std::size_t i = 0; i < irrelations.size(); ++i) {
    out += (i ? ", " : " ") + print_word(irrelations[i]);
  }
  return out + "}";
}

BasicClopenSet parse_clopen(const std::string& text, int rank) {
  auto fail = [&](const char* what) { throw SpecError(std::string(what) + ": " + text); };
  std::string s = text;
  auto lb = s.find('{');
  auto rb = s.rfind('}');
  if (lb == std::string::npos || rb == std::string::npos || rb < lb) {
    fail("clopen set must be braced {R: ... | S: ...}");
  }
  s = s.substr(lb + 1, rb - lb - 1);
  std::string rpart = s, spart;
  if (auto bar = s.find('|'); bar != std::string::npos) {
    rpart = s.substr(0, bar);
    spart = s.substr(bar + 1);
  }
  auto strip_tag = [](std::string part, const char* tag) {
    auto pos = part.find(tag);
    if (pos != std::string::npos) part = part.substr(pos + 2);
    return part;
  };
  rpart = strip_tag(rpart, "R:");
  spart = strip_tag(spart, "S:");
  auto parse_words = [&](const std::string& part) {
    std::vector<Word> out;
    std::stringstream ss(part);
    std::string item;
    while (std::getline(ss, item, ',')) {
      auto b = item.find_first_not_of(" \t");
      if (b == std::string::npos) continue;
      auto e = item.find_last_not_of(" \t");
      out.push_back(parse_word(item.substr(b, e - b + 1), rank));
    }
    return out;
  };
  BasicClopenSet omega;
  omega.rank = rank;
  omega.relations = parse_words(rpart);
  omega.irrelations = parse_words(spart);
  // duplicate-free, reduced by construction
  for (auto* list : {&omega.relations, &omega.irrelations}) {
    std::vector<Word> dedup;
    for (const Word& w : *list) {
      if (std::find(dedup.begin(), dedup.end(), w) == dedup.end()) {
        dedup.push_back(w);
      }
    }
    *list = dedup;
  }
  return omega;
}

bool member(const MarkedGroup& g, const BasicClopenSet& omega) {
  if (g.rank() != omega.rank) {
    throw SpecError("member: rank mismatch between group and clopen set");
  }
  for (const Word& r : omega.relations) {
    if (!g.is_relation(r)) return false;
  }
  for (const Word& s : omega.irrelations) {
    if (g.is_relation(s)) return false;
  }
  return true;
}

Verdict incoherent_semidecide(const BasicClopenSet& omega,
                              std::uint64_t fuel) {
  ConsequenceEngine engine(omega.rank, omega.relations);
  auto check = [&]() -> std::optional<Verdict> {
    for (const Word& s : omega.irrelations) {
      if (engine.contains(s)) {
        nlohmann::json w;
        w["irrelation"] = print_word(s);
        w["derivation"] = engine.derivation(s);
        return Verdict::verified(std::move(w), engine.fuel_spent());
      }
    }
    return std::nullopt;
  };
  if (auto v = check()) return *v;
  std::uint64_t chunk = 256;
  while (engine.fuel_spent() < fuel) {
    std::uint64_t target = std::min<std::uint64_t>(
        fuel, engine.fuel_spent() + chunk);
    std::uint64_t before = engine.fuel_spent();
    engine.advance_to(target);
    if (auto v = check()) return *v;
    if (engine.fuel_spent() == before) break;  // saturated
  }
  return Verdict::unknown(fuel);
}

std::vector<BasicClopenSet> atom_decomposition(
    const BasicClopenSet& omega, const std::vector<Word>& support) {
  // Assign a polarity to every support word not already fixed by omega.
  std::vector<Word> undetermined;
  for (const Word& w : support) {
    bool fixed =
        std::find(omega.relations.begin(), omega.relations.end(), w) !=
            omega.relations.end() ||
        std::find(omega.irrelations.begin(), omega.irrelations.end(), w) !=
            omega.irrelations.end();
    if (!fixed) undetermined.push_back(w);
  }
  std::vector<BasicClopenSet> atoms;
  std::uint64_t combos = 1ull << undetermined.size();
  for (std::uint64_t mask = 0; mask < combos; ++mask) {
    BasicClopenSet atom;
    atom.rank = omega.rank;
    for (const Word& w : support) {
      auto it = std::find(undetermined.begin(), undetermined.end(), w);
      bool as_relation;
      if (it == undetermined.end()) {
        as_relation =
            std::find(omega.relations.begin(), omega.relations.end(), w) !=
            omega.relations.end();
      } else {
        std::size_t bit_pos =
            static_cast<std::size_t>(it - undetermined.begin());
        as_relation = (mask & (1ull << bit_pos)) == 0;  // relation first
      }
      (as_relation ? atom.relations : atom.irrelations).push_back(w);
    }
    atoms.push_back(std::move(atom));
  }
  return atoms;
}

namespace {

// Syntactic subsumption: every constraint of `outer` appears in `atom`.
bool atom_inside(const BasicClopenSet& atom, const BasicClopenSet& outer) {
  for (const Word& r : outer.relations) {
    if (std::find(atom.relations.begin(), atom.relations.end(), r) ==
        atom.relations.end()) {
      return false;
    }
  }
  for (const Word& s : outer.irrelations) {
    if (std::find(atom.irrelations.begin(), atom.irrelations.end(), s) ==
        atom.irrelations.end()) {
      return false;
    }
  }
  return true;
}

}  // namespace

Verdict inclusion_semidecide(const std::vector<BasicClopenSet>& u,
                             const std::vector<BasicClopenSet>& v,
                             std::uint64_t fuel) {
  if (u.empty()) throw SpecError("inclusion: empty left-hand union");
  int rank = u[0].rank;
  for (const auto& o : u) {
    if (o.rank != rank) throw SpecError("inclusion: mixed ranks");
  }
  for (const auto& o : v) {
    if (o.rank != rank) throw SpecError("inclusion: mixed ranks");
  }
  // Total support: every word occurring anywhere, in first-seen order.
  std::vector<Word> support;
  auto add_support = [&](const Word& w) {
    if (std::find(support.begin(), support.end(), w) == support.end()) {
      support.push_back(w);
    }
  };
  for (const auto& side : {u, v}) {
    for (const auto& o : side) {
      for (const Word& w : o.relations) add_support(w);
      for (const Word& w : o.irrelations) add_support(w);
    }
  }

  nlohmann::json atoms_json = nlohmann::json::array();
  std::uint64_t total_fuel = 0;
  bool all_verified = true;
  for (const auto& o : u) {
    for (const BasicClopenSet& atom : atom_decomposition(o, support)) {
      nlohmann::json a;
      a["atom"] = atom.to_string();
      bool inside = false;
      for (const auto& target : v) {
        if (atom_inside(atom, target)) {
          inside = true;
          break;
        }
      }
      if (inside) {
        a["outcome"] = "subsumed";
      } else {
        Verdict e = incoherent_semidecide(atom, fuel);
        total_fuel += e.fuel_spent;
        if (e.verified()) {
          a["outcome"] = "incoherent";
          a["derivation"] = e.witness;
        } else {
          a["outcome"] = "unresolved";
          all_verified = false;
        }
      }
      atoms_json.push_back(std::move(a));
    }
  }
  nlohmann::json w;
  nlohmann::json sup = nlohmann::json::array();
  for (const Word& s : support) sup.push_back(print_word(s));
  w["support"] = sup;
  w["atoms"] = atoms_json;
  if (all_verified) return Verdict::verified(std::move(w), total_fuel);
  Verdict out = Verdict::unknown(total_fuel);
  out.witness = std::move(w);
  return out;
}

// --- Kuznetsov ---------------------------------------------------------------

namespace {

// Pulls relators from a replayable stream on demand, caching the prefix.
struct RelatorFeed {
  Enumerator<Word> source;
  std::unique_ptr<Stream<Word>> stream;
  std::vector<Word> seen;
  bool step(ConsequenceEngine& engine, int rank) {
    if (!stream) stream = source.begin_stream();
    if (auto w = stream->step()) {
      seen.push_back(*w);
      engine.add_seed(w->with_rank(rank));
      return true;
    }
    return false;
  }
};

}  // namespace

MarkedGroup kuznetsov_wp(const RecPresentation& pres,
                         const Enumerator<Word>& discriminating,
                         const std::string& name) {
  if (pres.rank == RecPresentation::kUnboundedRank) {
    throw SpecError("kuznetsov_wp needs a fixed finite rank");
  }
  int rank = pres.rank;
  struct Memo {
    std::mutex mu;
    std::map<std::vector<Letter>, bool> answers;
  };
  auto memo = std::make_shared<Memo>();
  auto relators = pres.relators;
  auto disc = discriminating;
  return MarkedGroup(rank, name, [rank, relators, disc, memo](const Word& w) {
    {
      std::lock_guard<std::mutex> lock(memo->mu);
      auto it = memo->answers.find(w.letters());
      if (it != memo->answers.end()) return it->second;
    }
    // Search (a): w among the consequences of the relators.
    ConsequenceEngine pos(rank, {});
    RelatorFeed pos_feed{relators, nullptr, {}};
    // Search (b): some discriminating element among the consequences of
    // relators + w.
    ConsequenceEngine neg(rank, {w});
    RelatorFeed neg_feed{relators, nullptr, {}};
    auto disc_stream = disc.begin_stream();
    std::vector<Word> disc_seen;

    bool answer = false;
    std::uint64_t round = 0;
    while (true) {
      ++round;
      // one step of each ingredient, strict round robin
      pos_feed.step(pos, rank);
      pos.advance_to(pos.fuel_spent() + 64);
      if (pos.contains(w)) {
        answer = true;
        break;
      }
      neg_feed.step(neg, rank);
      neg.advance_to(neg.fuel_spent() + 64);
      if (auto d = disc_stream->step()) disc_seen.push_back(*d);
      bool refuted = false;
      for (const Word& d : disc_seen) {
        if (neg.contains(d)) {
          refuted = true;
          break;
        }
      }
      if (refuted) {
        answer = false;
        break;
      }
    }
    std::lock_guard<std::mutex> lock(memo->mu);
    memo->answers.emplace(w.letters(), answer);
    return answer;
  });
}

RecPresentation quotient_recpres(const MarkedGroup& g,
                                 const std::vector<Word>& normal_gens) {
  RecPresentation pres;
  pres.rank = g.rank();
  std::vector<Word> gens;
  for (const Word& w : normal_gens) gens.push_back(w.with_rank(g.rank()));
  pres.relators = make_enumerator<Word>([g, gens]() {
    struct State {
      std::uint64_t next_index = 0;
      std::size_t next_gen = 0;
      bool gen_turn = true;
    };
    auto st = std::make_shared<State>();
    return [g, gens, st]() -> std::optional<Word> {
      // Interleave the listed normal generators with the shortlex
      // enumeration of g's relations; one candidate per quantum.
      if (st->gen_turn && st->next_gen < gens.size()) {
        st->gen_turn = false;
        return gens[st->next_gen++];
      }
      st->gen_turn = true;
      Word w = shortlex_word(st->next_index++, g.rank());
      if (g.is_relation(w) && !w.empty()) return w;
      return std::nullopt;
    };
  });
  return pres;
}

Verdict finite_from_recpres_semidecide(const RecPresentation& pres,
                                       std::uint64_t fuel) {
  if (pres.rank == RecPresentation::kUnboundedRank) {
    throw SpecError("finite_from_recpres needs a fixed finite rank");
  }
  int rank = pres.rank;
  ConsequenceEngine engine(rank, {});
  RelatorFeed feed{pres.relators, nullptr, {}};
  std::uint64_t spent_feed = 0;

  auto closure_order = [&](std::size_t n) -> std::optional<nlohmann::json> {
    // Candidate set: the first n shortlex words. Closed iff every
    // word * letter is provably equal to a candidate.
    std::vector<Word> set;
    for (std::size_t i = 0; i < n; ++i) {
      set.push_back(shortlex_word(i, rank));
    }
    nlohmann::json table = nlohmann::json::array();
    for (const Word& u : set) {
      for (int i = 1; i <= rank; ++i) {
        for (int sgn : {1, -1}) {
          Word t = u * generator_power(i, sgn, rank);
          bool matched = false;
          for (const Word& v : set) {
            if (engine.contains(t * v.inverse())) {
              nlohmann::json row;
              row["from"] = print_word(u);
              row["letter"] = print_word(generator_power(i, sgn, rank));
              row["to"] = print_word(v);
              table.push_back(row);
              matched = true;
              break;
            }
          }
          if (!matched) return std::nullopt;
        }
      }
    }
    nlohmann::json w;
    w["order_at_most"] = n;
    nlohmann::json elems = nlohmann::json::array();
    for (const Word& u : set) elems.push_back(print_word(u));
    w["elements"] = elems;
    w["closure_table"] = table;
    return w;
  };

  std::uint64_t stage = 0;
  while (engine.fuel_spent() + spent_feed < fuel) {
    ++stage;
    if (feed.step(engine, rank)) ++spent_feed;
    engine.advance_to(engine.fuel_spent() + 64);
    std::size_t max_n = static_cast<std::size_t>(std::min<std::uint64_t>(
        stage, 64));
    for (std::size_t n = 1; n <= max_n; ++n) {
      if (auto w = closure_order(n)) {
        return Verdict::verified(std::move(*w),
                                 engine.fuel_spent() + spent_feed);
      }
    }
  }
  return Verdict::unknown(engine.fuel_spent() + spent_feed);
}

}  // namespace gspace
