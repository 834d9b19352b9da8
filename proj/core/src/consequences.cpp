#include "gspace/consequences.hpp"

#include <algorithm>

namespace gspace {

namespace {

// Distinct rotations of a cyclically reduced word, as rotation offsets.
std::vector<std::size_t> distinct_rotations(const Word& w) {
  std::vector<std::size_t> out;
  std::vector<Word> seen;
  for (std::size_t i = 0; i < std::max<std::size_t>(w.size(), 1); ++i) {
    Word r = w.rotated(i);
    if (std::find(seen.begin(), seen.end(), r) == seen.end()) {
      seen.push_back(r);
      out.push_back(i);
    }
  }
  return out;
}

}  // namespace

Word ConsequenceEngine::canonical_cyclic(const Word& w) {
  Word c = w.cyclically_reduced();
  if (c.empty()) return c;
  Word best = c;
  for (std::size_t i = 1; i < c.size(); ++i) {
    Word r = c.rotated(i);
    if (r.shortlex_less(best)) best = r;
  }
  return best;
}

ConsequenceEngine::ConsequenceEngine(int rank, std::vector<Word> seeds)
    : rank_(rank) {
  for (const Word& s : seeds) add_seed(s);
}

std::uint64_t ConsequenceEngine::length_cap() const {
  return cap_base_ + spent_ / 1024;
}

void ConsequenceEngine::add_seed(const Word& w) {
  Word r = w.with_rank(rank_);
  cap_base_ = std::max(cap_base_, 2 * static_cast<std::uint64_t>(r.size()) + 8);
  Move m;
  m.kind = Move::Axiom;
  m.seed = r;
  insert_class(canonical_cyclic(r), m);
}

void ConsequenceEngine::insert_class(Word rep, Move how) {
  if (rep.empty()) return;  // the identity needs no class
  if (index_.contains(rep)) return;
  std::size_t id = classes_.size();
  classes_.push_back({rep, how});
  index_.emplace(rep, id);
  // Inverse class, derived for free.
  Word inv = canonical_cyclic(rep.inverse());
  if (!index_.contains(inv)) {
    Move m;
    m.kind = Move::Inverse;
    m.a = id;
    std::size_t iid = classes_.size();
    classes_.push_back({inv, m});
    index_.emplace(inv, iid);
  }
  // Each fresh class opens a row sweeping partners v = 0..u; pairs with
  // later classes are covered by the later classes' rows. Cyclic classes
  // absorb factor order, so unordered pairs suffice.
  for (std::size_t id2 = id; id2 < classes_.size(); ++id2) {
    push_batch(id2, 0, 0);
  }
}

void ConsequenceEngine::push_batch(std::size_t u, std::size_t v,
                                   std::uint64_t bridge) {
  if (v > u) return;
  Word b = shortlex_word(bridge, rank_);
  std::uint64_t w = classes_[u].rep.size() + classes_[v].rep.size() +
                    8 * static_cast<std::uint64_t>(b.size());
  heap_.push(Batch{w, seq_++, u, v, bridge});
}

void ConsequenceEngine::evaluate_batch(const Batch& batch) {
  const Word& u = classes_[batch.u].rep;
  const Word& v = classes_[batch.v].rep;
  Word g = shortlex_word(batch.bridge, rank_);
  Word ginv = g.inverse();

  auto rots_u = distinct_rotations(u);
  auto rots_v = distinct_rotations(v);
  std::uint64_t cap = length_cap();

  auto try_pair = [&](std::size_t i, std::size_t j) {
    ++spent_;
    Word left = u.rotated(i);
    Word right = g * v.rotated(j) * ginv;
    Word prod = canonical_cyclic(left * right);
    if (!prod.empty() && prod.size() <= cap) {
      Move m;
      m.kind = Move::Product;
      m.a = batch.u;
      m.b = batch.v;
      m.rot_a = i;
      m.rot_b = j;
      m.bridge = g;
      insert_class(prod, m);
    }
  };

  // Plain aligned product once, plus every rotation pair with cancellation;
  // arbitrary alignments are recovered by the bridge sweep, so skipping
  // cancellation-free pairs costs no completeness.
  try_pair(0, 0);
  for (std::size_t i : rots_u) {
    Letter last = u.rotated(i).at(u.size() - 1);
    for (std::size_t j : rots_v) {
      if (i == 0 && j == 0) continue;
      Word right = g * v.rotated(j) * ginv;
      if (right.empty()) continue;
      if (right.at(0) == inverse(last)) try_pair(i, j);
    }
  }

  // Successors: next bridge for this pair, next partner for this row.
  push_batch(batch.u, batch.v, batch.bridge + 1);
  if (batch.bridge == 0) push_batch(batch.u, batch.v + 1, 0);
}

void ConsequenceEngine::advance_to(std::uint64_t budget) {
  while (spent_ < budget && !heap_.empty()) {
    Batch b = heap_.top();
    heap_.pop();
    evaluate_batch(b);
  }
}

bool ConsequenceEngine::contains(const Word& w) const {
  Word c = canonical_cyclic(w.with_rank(rank_));
  if (c.empty()) return true;  // conjugates of the identity
  return index_.contains(c);
}

// --- derivations ---------------------------------------------------------

std::size_t ConsequenceEngine::emit_conj_chain(std::size_t from_id,
                                               const Word& from,
                                               const Word& by,
                                               nlohmann::json& steps) {
  // Emits steps deriving by⁻¹ * from * by via single-letter conjugations.
  std::size_t cur = from_id;
  Word w = from;
  for (Letter l : by.letters()) {
    Word lw = unsafe_word({l}, w.rank());
    w = lw.inverse() * w * lw;
    nlohmann::json step;
    step["id"] = steps.size();
    step["word"] = print_word(w);
    step["rule"] = "conjugate";
    step["args"] = {cur};
    step["letter"] = print_word(lw);
    steps.push_back(step);
    cur = steps.size() - 1;
  }
  return cur;
}

std::size_t ConsequenceEngine::emit_class_derivation(
    std::size_t cls, nlohmann::json& steps,
    std::vector<std::optional<std::size_t>>& done) const {
  if (done[cls]) return *done[cls];
  const ClassEntry& e = classes_[cls];
  std::size_t id;
  switch (e.how.kind) {
    case Move::Axiom: {
      nlohmann::json step;
      step["id"] = steps.size();
      step["word"] = print_word(e.how.seed);
      step["rule"] = "axiom";
      step["args"] = nlohmann::json::array();
      steps.push_back(step);
      std::size_t axiom_id = steps.size() - 1;
      // The canonical representative is a conjugate of the seed: strip to
      // the cyclic core, then rotate.
      Word w = e.how.seed;
      Word core = w.cyclically_reduced();
      std::size_t strip = (w.size() - core.size()) / 2;
      Word prefix = unsafe_word(
          std::vector<Letter>(w.letters().begin(),
                              w.letters().begin() +
                                  static_cast<std::ptrdiff_t>(strip)),
          w.rank());
      std::size_t cur = emit_conj_chain(axiom_id, w, prefix, steps);
      // rotate the core onto the canonical representative
      std::size_t rot = 0;
      for (std::size_t i = 0; i < std::max<std::size_t>(core.size(), 1); ++i) {
        if (core.rotated(i) == e.rep) {
          rot = i;
          break;
        }
      }
      Word rot_prefix = unsafe_word(
          std::vector<Letter>(core.letters().begin(),
                              core.letters().begin() +
                                  static_cast<std::ptrdiff_t>(rot)),
          core.rank());
      id = emit_conj_chain(cur, core, rot_prefix, steps);
      break;
    }
    case Move::Inverse: {
      std::size_t src = emit_class_derivation(e.how.a, steps, done);
      nlohmann::json step;
      step["id"] = steps.size();
      step["word"] = print_word(classes_[e.how.a].rep.inverse());
      step["rule"] = "inverse";
      step["args"] = {src};
      steps.push_back(step);
      id = steps.size() - 1;
      break;
    }
    case Move::Product: {
      std::size_t ua = emit_class_derivation(e.how.a, steps, done);
      std::size_t ub = emit_class_derivation(e.how.b, steps, done);
      const Word& u = classes_[e.how.a].rep;
      const Word& v = classes_[e.how.b].rep;
      // left = rot_a(u), right = bridge * rot_b(v) * bridge⁻¹
      Word uprefix = unsafe_word(
          std::vector<Letter>(u.letters().begin(),
                              u.letters().begin() +
                                  static_cast<std::ptrdiff_t>(e.how.rot_a)),
          u.rank());
      std::size_t left_id = emit_conj_chain(ua, u, uprefix, steps);
      Word left = u.rotated(e.how.rot_a);
      Word vprefix = unsafe_word(
          std::vector<Letter>(v.letters().begin(),
                              v.letters().begin() +
                                  static_cast<std::ptrdiff_t>(e.how.rot_b)),
          v.rank());
      std::size_t vrot_id = emit_conj_chain(ub, v, vprefix, steps);
      Word vrot = v.rotated(e.how.rot_b);
      std::size_t right_id =
          emit_conj_chain(vrot_id, vrot, e.how.bridge.inverse(), steps);
      Word right = vrot.conjugated_by(e.how.bridge.inverse());
      Word prod = left * right;
      nlohmann::json step;
      step["id"] = steps.size();
      step["word"] = print_word(prod);
      step["rule"] = "product";
      step["args"] = {left_id, right_id};
      steps.push_back(step);
      std::size_t cur = steps.size() - 1;
      // conjugate down to the canonical representative
      Word core = prod.cyclically_reduced();
      std::size_t strip = (prod.size() - core.size()) / 2;
      Word prefix = unsafe_word(
          std::vector<Letter>(prod.letters().begin(),
                              prod.letters().begin() +
                                  static_cast<std::ptrdiff_t>(strip)),
          prod.rank());
      cur = emit_conj_chain(cur, prod, prefix, steps);
      std::size_t rot = 0;
      for (std::size_t i = 0; i < std::max<std::size_t>(core.size(), 1); ++i) {
        if (core.rotated(i) == e.rep) {
          rot = i;
          break;
        }
      }
      Word rot_prefix = unsafe_word(
          std::vector<Letter>(core.letters().begin(),
                              core.letters().begin() +
                                  static_cast<std::ptrdiff_t>(rot)),
          core.rank());
      id = emit_conj_chain(cur, core, rot_prefix, steps);
      break;
    }
    default: id = 0;
  }
  done[cls] = id;
  return id;
}

nlohmann::json ConsequenceEngine::derivation(const Word& target) const {
  Word w = target.with_rank(rank_);
  nlohmann::json steps = nlohmann::json::array();
  Word c = canonical_cyclic(w);
  if (c.empty()) {
    // w is p * p⁻¹-free-trivial or a conjugate of the identity; derive it as
    // an explicitly trivial product of axioms? The only caller asks for
    // genuinely derived words; represent the trivial case directly.
    nlohmann::json step;
    step["id"] = 0;
    step["word"] = print_word(w);
    step["rule"] = "trivial";
    step["args"] = nlohmann::json::array();
    steps.push_back(step);
    return steps;
  }
  auto it = index_.find(c);
  if (it == index_.end()) {
    throw SpecError("derivation requested for an underived word");
  }
  std::vector<std::optional<std::size_t>> done(classes_.size());
  std::size_t rep_id = emit_class_derivation(it->second, steps, done);
  // w = h * rep' * h⁻¹ for the cyclic-reduction prefix h and a rotation
  // rep' of the canonical representative.
  Word core = w.cyclically_reduced();
  std::size_t rot = 0;
  for (std::size_t i = 0; i < std::max<std::size_t>(c.size(), 1); ++i) {
    if (c.rotated(i) == core) {
      rot = i;
      break;
    }
  }
  Word rot_prefix = unsafe_word(
      std::vector<Letter>(c.letters().begin(),
                          c.letters().begin() +
                              static_cast<std::ptrdiff_t>(rot)),
      c.rank());
  std::size_t cur = emit_conj_chain(rep_id, c, rot_prefix, steps);
  // conjugate up from the cyclic core to w: w = p * core * p⁻¹ where p is
  // the stripped prefix, i.e. core conjugated by p⁻¹.
  std::size_t strip = (w.size() - core.size()) / 2;
  Word prefix = unsafe_word(
      std::vector<Letter>(w.letters().begin(),
                          w.letters().begin() +
                              static_cast<std::ptrdiff_t>(strip)),
      w.rank());
  cur = emit_conj_chain(cur, core, prefix.inverse(), steps);
  return steps;
}

bool ConsequenceEngine::check_derivation(const nlohmann::json& d,
                                         const std::vector<Word>& axioms,
                                         const Word& target, int rank) {
  std::vector<Word> words;
  for (const auto& step : d) {
    Word w = parse_word(step.at("word").get<std::string>(), rank);
    std::string rule = step.at("rule").get<std::string>();
    auto arg = [&](std::size_t i) -> const Word& {
      std::size_t id = step.at("args").at(i).get<std::size_t>();
      if (id >= words.size()) throw SpecError("derivation refers forward");
      return words[id];
    };
    if (rule == "axiom") {
      bool found = false;
      for (const Word& a : axioms) {
        if (a.with_rank(rank) == w) found = true;
      }
      if (!found) return false;
    } else if (rule == "trivial") {
      if (!w.empty()) return false;
    } else if (rule == "inverse") {
      if (!(arg(0).inverse() == w)) return false;
    } else if (rule == "conjugate") {
      Word l = parse_word(step.at("letter").get<std::string>(), rank);
      if (!(arg(0).conjugated_by(l) == w)) return false;
    } else if (rule == "product") {
      if (!(arg(0) * arg(1) == w)) return false;
    } else {
      return false;
    }
    words.push_back(w);
  }
  return !words.empty() && words.back() == target.with_rank(rank);
}

// --- ConsequenceSet --------------------------------------------------------

ConsequenceSet::ConsequenceSet(int rank, std::vector<Word> relators,
                               std::uint64_t fuel)
    : engine_(rank, std::move(relators)) {
  engine_.advance_to(fuel);
}

std::vector<Word> ConsequenceSet::words() const {
  std::vector<Word> out;
  out.push_back(Word(engine_.rank()));  // ε is always a consequence
  for (std::size_t i = 0; i < engine_.class_count(); ++i) {
    out.push_back(engine_.class_rep(i));
  }
  return out;
}

ConsequenceSet consequences(const std::vector<Word>& relators, int rank,
                            std::uint64_t fuel) {
  return ConsequenceSet(rank, relators, fuel);
}

}  // namespace gspace
