#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "gspace/catalog.hpp"
#include "gspace/properties.hpp"
#include "test_util.hpp"

using namespace gspace;

namespace {

Word W(const std::string& s, int rank) { return parse_word(s, rank); }

// Re-validates witnesses using oracle queries alone.
bool check_torsion_witness(const MarkedGroup& g, const nlohmann::json& w) {
  Word elem = parse_word(w["element"].get<std::string>(), g.rank());
  long m = w["order_divides"].get<long>();
  return !g.is_relation(elem) && g.is_relation(elem.pow(m));
}

bool check_center_witness(const MarkedGroup& g, const nlohmann::json& w) {
  Word elem = parse_word(w["element"].get<std::string>(), g.rank());
  if (g.is_relation(elem)) return false;
  for (int i = 1; i <= g.rank(); ++i) {
    if (!g.is_relation(commutator(elem, generator_power(i, 1, g.rank())))) {
      return false;
    }
  }
  return true;
}

bool check_perfect_witness(const MarkedGroup& g, const nlohmann::json& w) {
  for (const auto& entry : w["expressions"]) {
    int gen = entry["generator"].get<int>();
    Word prod(g.rank());
    for (const auto& c : entry["commutators"]) {
      Word u = parse_word(c["u"].get<std::string>(), g.rank());
      Word v = parse_word(c["v"].get<std::string>(), g.rank());
      prod = prod * commutator(u, v);
    }
    if (!g.same_element(prod, generator_power(gen, 1, g.rank()))) return false;
  }
  return true;
}

bool check_icc_witness(const MarkedGroup& g, const nlohmann::json& w) {
  Word elem = parse_word(w["element"].get<std::string>(), g.rank());
  if (g.is_relation(elem)) return false;
  std::vector<Word> cls;
  for (const auto& s : w["finite_class"]) {
    cls.push_back(parse_word(s.get<std::string>(), g.rank()));
  }
  // the element belongs, and the set is closed under generator conjugation
  bool contains_elem = false;
  for (const Word& x : cls) {
    if (g.same_element(x, elem)) contains_elem = true;
    for (int i = 1; i <= g.rank(); ++i) {
      for (int sgn : {1, -1}) {
        Word y = x.conjugated_by(generator_power(i, sgn, g.rank()));
        bool found = false;
        for (const Word& z : cls) {
          if (g.same_element(y, z)) {
            found = true;
            break;
          }
        }
        if (!found) return false;
      }
    }
  }
  return contains_elem;
}

bool check_orderability_witness(const MarkedGroup& g, const nlohmann::json& w) {
  std::vector<Word> set;
  for (const auto& s : w["elements"]) {
    set.push_back(parse_word(s.get<std::string>(), g.rank()));
    if (g.is_relation(set.back())) return false;
  }
  std::size_t expected = 1ull << set.size();
  if (w["signings"].size() != expected) return false;
  for (const auto& signing : w["signings"]) {
    Word prod(g.rank());
    Word expr = parse_word(signing["product"].get<std::string>(),
                           static_cast<int>(set.size()));
    if (expr.empty()) return false;
    for (Letter l : expr.letters()) {
      if (l < 0) return false;  // positive products only
      int sign = signing["signs"][static_cast<std::size_t>(l - 1)].get<int>();
      const Word& base = set[static_cast<std::size_t>(l - 1)];
      prod = prod * (sign > 0 ? base : base.inverse());
    }
    if (!g.is_relation(prod)) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("decidable trio matches the hand-labelled catalog") {
  for (const CatalogEntry& e : catalog_instances()) {
    CAPTURE(e.group.name());
    CHECK(is_abelian(e.group) == e.abelian);
    // nilpotency class
    if (e.nilpotency_class >= 1) {
      CHECK(nilpotent_class_at_most(e.group, e.nilpotency_class));
      if (e.nilpotency_class > 1) {
        CHECK_FALSE(nilpotent_class_at_most(e.group, e.nilpotency_class - 1));
      }
    } else if (e.nilpotency_class < 0) {
      for (int c = 1; c <= 3; ++c) {
        CHECK_FALSE(nilpotent_class_at_most(e.group, c));
      }
    }
    // cardinality
    if (e.order > 0) {
      CHECK(card_at_most(e.group, static_cast<std::uint64_t>(e.order)));
      if (e.order > 1) {
        CHECK_FALSE(card_at_most(e.group, static_cast<std::uint64_t>(e.order) - 1));
      }
    } else {
      CHECK_FALSE(card_at_most(e.group, 40));
    }
  }
}

TEST_CASE("spec decidable examples") {
  CHECK(is_abelian(free_abelian(2)));
  CHECK_FALSE(is_abelian(free_group(2)));
  CHECK_FALSE(is_abelian(symmetric(3)));
  CHECK(nilpotent_class_at_most(heisenberg(), 2));
  CHECK_FALSE(nilpotent_class_at_most(heisenberg(), 1));
  CHECK_FALSE(nilpotent_class_at_most(free_group(2), 2));
  CHECK(card_at_most(cyclic(5), 5));
  CHECK_FALSE(card_at_most(cyclic(5), 4));
  CHECK_FALSE(card_at_most(integers(), 100));
}

TEST_CASE("finiteness semi-decision") {
  Verdict v6 = is_finite_semidecide(cyclic(6), 10000);
  REQUIRE(v6.verified());
  CHECK(v6.witness["order"] == 6);
  Verdict v1 = is_finite_semidecide(trivial_group(), 100);
  REQUIRE(v1.verified());
  CHECK(v1.witness["order"] == 1);
  CHECK(is_finite_semidecide(integers(), 3000).unknown());
}

TEST_CASE("torsion semi-decision") {
  Verdict z2 = torsion_semidecide(cyclic(2), 100);
  REQUIRE(z2.verified());
  CHECK(check_torsion_witness(cyclic(2), z2.witness));

  Verdict lamp = torsion_semidecide(lamplighter(), 1000);
  REQUIRE(lamp.verified());
  CHECK(lamp.witness["element"] == "a");  // the order-2 lamp generator
  CHECK(lamp.witness["order_divides"] == 2);
  CHECK(check_torsion_witness(lamplighter(), lamp.witness));

  CHECK(torsion_semidecide(free_group(2), 20000).unknown());
  CHECK(torsion_semidecide(integers(), 5000).unknown());
}

TEST_CASE("center semi-decision") {
  Verdict h = center_nontrivial_semidecide(heisenberg(), 100000);
  REQUIRE(h.verified());
  CHECK(check_center_witness(heisenberg(), h.witness));

  Verdict z = center_nontrivial_semidecide(integers(), 100);
  REQUIRE(z.verified());
  CHECK(z.witness["element"] == "a");

  CHECK(center_nontrivial_semidecide(free_group(2), 20000).unknown());
}

TEST_CASE("perfect semi-decision") {
  Verdict t = perfect_semidecide(trivial_group(), 100);
  REQUIRE(t.verified());
  CHECK(check_perfect_witness(trivial_group(), t.witness));

  Verdict a5 = perfect_semidecide(alternating(5), 1000000);
  REQUIRE(a5.verified());
  CHECK(check_perfect_witness(alternating(5), a5.witness));

  CHECK(perfect_semidecide(integers(), 10000).unknown());
}

TEST_CASE("rank semi-decision") {
  MarkedGroup marked = subgroup_marking(integers(), {W("a", 1), W("a^3", 1)});
  Verdict v = rank_at_most_semidecide(marked, 1, 50000);
  REQUIRE(v.verified());

  Verdict own = rank_at_most_semidecide(free_group(2), 2, 10000);
  CHECK(own.verified());

  CHECK(rank_at_most_semidecide(free_group(2), 1, 20000).unknown());
}

TEST_CASE("virtually cyclic semi-decision") {
  Verdict dinf =
      virtually_cyclic_semidecide(free_product(cyclic(2), cyclic(2)), 200000);
  REQUIRE(dinf.verified());
  // certificate shape: a generating set, normality expressions, a finite
  // quotient closure table
  CHECK(dinf.witness.contains("subgroup_generators"));
  CHECK(dinf.witness.contains("quotient"));

  Verdict z6 = virtually_cyclic_semidecide(cyclic(6), 100000);
  CHECK(z6.verified());

  CHECK(virtually_cyclic_semidecide(free_group(2), 60000).unknown());
}

TEST_CASE("ICC refutation") {
  Verdict z = icc_refute(integers(), 1000);
  REQUIRE(z.verified());
  CHECK(z.witness["element"] == "a");
  CHECK(z.witness["finite_class"].size() == 1);
  CHECK(check_icc_witness(integers(), z.witness));

  Verdict h = icc_refute(heisenberg(), 400000);
  REQUIRE(h.verified());
  CHECK(check_icc_witness(heisenberg(), h.witness));
  // the witness element is central here, so its class is a singleton
  CHECK(h.witness["finite_class"].size() == 1);

  CHECK(icc_refute(free_group(2), 30000).unknown());
}

TEST_CASE("orderability refutation") {
  Verdict z2 = orderability_refute(cyclic(2), 2000);
  REQUIRE(z2.verified());
  CHECK(check_orderability_witness(cyclic(2), z2.witness));

  Verdict s3 = orderability_refute(symmetric(3), 20000);
  REQUIRE(s3.verified());
  CHECK(check_orderability_witness(symmetric(3), s3.witness));

  CHECK(orderability_refute(integers(), 20000).unknown());
  CHECK(orderability_refute(free_group(2), 20000).unknown());
}

TEST_CASE("monotonicity: verified verdicts persist with identical witnesses") {
  for (std::uint64_t fuel : {400ull, 4000ull, 40000ull}) {
    Verdict v = torsion_semidecide(lamplighter(), fuel);
    REQUIRE(v.verified());
    CHECK(v.witness["element"] == "a");
  }
  Verdict small = center_nontrivial_semidecide(integers(), 50);
  Verdict large = center_nontrivial_semidecide(integers(), 5000);
  REQUIRE(small.verified());
  REQUIRE(large.verified());
  CHECK(small.witness == large.witness);
}

TEST_CASE("delta-hyperbolicity refutation") {
  Verdict z2 = not_delta_hyperbolic(free_abelian(2), 1, 8);
  REQUIRE(z2.verified());
  // witness re-validation: the far point sits on the side geodesic and is
  // oracle-far from both other sides
  MarkedGroup g = free_abelian(2);
  const auto& w = z2.witness;
  Word p = parse_word(w["far_point"].get<std::string>(), 2);
  int delta = w["delta"].get<int>();
  auto on_path = [&](const nlohmann::json& path, const Word& q) {
    for (const auto& s : path) {
      if (g.same_element(parse_word(s.get<std::string>(), 2), q)) return true;
    }
    return false;
  };
  CHECK(on_path(w["side_geodesic"], p));
  // consecutive path points differ by one generator
  for (const auto& path :
       {w["side_geodesic"], w["other_sides"][0], w["other_sides"][1]}) {
    for (std::size_t i = 0; i + 1 < path.size(); ++i) {
      Word u = parse_word(path[i].get<std::string>(), 2);
      Word v = parse_word(path[i + 1].get<std::string>(), 2);
      Word diff = u.inverse() * v;
      CHECK(diff.size() == 1);
    }
  }
  // far check over the delta-ball
  for (std::uint64_t n = 0;; ++n) {
    Word ball_word = shortlex_word(n, 2);
    if (static_cast<int>(ball_word.size()) > delta) break;
    for (const auto& s : w["other_sides"][0]) {
      CHECK_FALSE(g.same_element(p * ball_word,
                                 parse_word(s.get<std::string>(), 2)));
    }
    for (const auto& s : w["other_sides"][1]) {
      CHECK_FALSE(g.same_element(p * ball_word,
                                 parse_word(s.get<std::string>(), 2)));
    }
  }

  CHECK(not_delta_hyperbolic(free_group(2), 1, 8).unknown());
  CHECK(not_delta_hyperbolic(integers(), 1, 8).unknown());
  CHECK_THROWS_AS(not_delta_hyperbolic(free_abelian(2), 3, 4), SpecError);
}

TEST_CASE("semi-deciders never refute; refuters never claim the property") {
  // API-shape soundness: statuses come from {Verified, Unknown} only.
  CHECK_FALSE(torsion_semidecide(free_group(2), 1000).refuted());
  CHECK_FALSE(is_finite_semidecide(integers(), 1000).refuted());
  CHECK_FALSE(center_nontrivial_semidecide(free_group(2), 1000).refuted());
  CHECK_FALSE(perfect_semidecide(integers(), 1000).refuted());
  CHECK_FALSE(icc_refute(free_group(2), 1000).refuted());
  CHECK_FALSE(orderability_refute(integers(), 1000).refuted());
}
