#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "gspace/catalog.hpp"
#include "gspace/metric.hpp"
#include "test_util.hpp"

using namespace gspace;

namespace {

// Independent brute-force comparator: first shortlex index where the
// oracles disagree, if any, scanning 0..limit.
std::optional<std::uint64_t> first_disagreement(const MarkedGroup& g,
                                                const MarkedGroup& h,
                                                std::uint64_t limit) {
  for (std::uint64_t n = 0; n <= limit; ++n) {
    Word w = shortlex_word(n, g.rank());
    if (g.is_relation(w) != h.is_relation(w)) return n;
  }
  return std::nullopt;
}

}  // namespace

TEST_CASE("distance values against the brute comparator") {
  MarkedGroup z = integers();
  CHECK(distance(cyclic(2), z, 10) == Dyadic::exact(3));
  CHECK(distance(cyclic(3), z, 10) == Dyadic::exact(5));
  CHECK(*first_disagreement(cyclic(2), z, 63) == 3);
  CHECK(*first_disagreement(cyclic(3), z, 63) == 5);
  CHECK(distance(z, z, 64) == Dyadic::at_most(65));
  CHECK(distance(z, free_abelian(2), 10) == Dyadic::two());
  // symmetry on catalog pairs
  auto cat = catalog_instances();
  for (std::size_t i = 0; i < cat.size(); ++i) {
    for (std::size_t j = i + 1; j < cat.size(); ++j) {
      Dyadic d1 = distance(cat[i].group, cat[j].group, 24);
      Dyadic d2 = distance(cat[j].group, cat[i].group, 24);
      CHECK(d1 == d2);
    }
  }
}

TEST_CASE("distance(G, G) is never exact") {
  for (const CatalogEntry& e : catalog_instances()) {
    Dyadic d = distance(e.group, e.group, 32);
    CHECK(d == Dyadic::at_most(33));
  }
}

TEST_CASE("ultrametric inequality on exact catalog triples") {
  auto cat = catalog_instances();
  for (std::size_t i = 0; i < cat.size(); ++i) {
    for (std::size_t j = 0; j < cat.size(); ++j) {
      for (std::size_t k = 0; k < cat.size(); ++k) {
        Dyadic dij = distance(cat[i].group, cat[j].group, 16);
        Dyadic dik = distance(cat[i].group, cat[k].group, 16);
        Dyadic dkj = distance(cat[k].group, cat[j].group, 16);
        if (dij.is_exact() && dik.is_exact() && dkj.is_exact()) {
          CHECK(dij.upper() <= std::max(dik.upper(), dkj.upper()) + 1e-12);
        }
      }
    }
  }
}

TEST_CASE("ball vertex counts") {
  CHECK(ball(free_group(2), 3).vertices.size() == 53);
  CHECK(ball(free_abelian(2), 5).vertices.size() == 61);
  CayleyBall z5 = ball(cyclic(5), 2);
  CHECK(z5.vertices.size() == 5);
  CHECK(z5.closed);
  CHECK_FALSE(ball(integers(), 4).closed);
  // tree sphere sizes 2k(2k-1)^{i-1}
  CayleyBall f3 = ball(free_group(3), 3);
  CHECK(f3.vertex_count_at_radius(1) == 7);
  CHECK(f3.vertex_count_at_radius(2) == 37);
  CHECK(f3.vertices.size() == 1 + 6 + 30 + 150);
}

TEST_CASE("ball vertices are oracle-distinct normal forms at BFS depth") {
  for (MarkedGroup g : {cyclic(6), dihedral(4), heisenberg(),
                        free_product(cyclic(2), cyclic(3))}) {
    CayleyBall b = ball(g, 3);
    CAPTURE(g.name());
    for (std::size_t i = 0; i < b.vertices.size(); ++i) {
      for (std::size_t j = i + 1; j < b.vertices.size(); ++j) {
        CHECK_FALSE(g.same_element(b.vertices[i], b.vertices[j]));
      }
    }
    for (int r = 0; r <= 3; ++r) {
      int begin = r == 0 ? 0 : b.vertex_count_at_radius(r - 1);
      int end = b.vertex_count_at_radius(r);
      for (int v = begin; v < end; ++v) {
        CHECK(b.vertices[static_cast<std::size_t>(v)].size() ==
              static_cast<std::size_t>(r));
      }
    }
  }
}

TEST_CASE("cayley distance values") {
  MarkedGroup z = integers();
  CHECK(cayley_distance(cyclic(2), z, 4) == Dyadic::exact(0));
  CHECK(cayley_distance(cyclic(10), z, 8) == Dyadic::exact(4));
  CHECK(cayley_distance(z, z, 6) == Dyadic::at_most(6));
  CHECK(cayley_distance(z, free_abelian(2), 4) == Dyadic::two());
  // wrap edge inside the ball: Z/9 and Z differ at radius 4 already
  CHECK(cayley_distance(cyclic(9), z, 8) == Dyadic::exact(3));
}

TEST_CASE("d and d_Cay consistency") {
  // When radius-r balls agree, bits of words of length <= r agree.
  auto check_pair = [](const MarkedGroup& g, const MarkedGroup& h, int max_r) {
    Dyadic dc = cayley_distance(g, h, max_r);
    int agreed_radius =
        dc.kind == Dyadic::Kind::AtMost ? max_r : dc.neg_exp;  // exact: 2^-r
    for (std::uint64_t n = 0;; ++n) {
      Word w = shortlex_word(n, g.rank());
      if (static_cast<int>(w.size()) > agreed_radius) break;
      CHECK(g.is_relation(w) == h.is_relation(w));
    }
  };
  check_pair(cyclic(10), integers(), 8);
  check_pair(cyclic(9), integers(), 8);
  check_pair(dihedral(6), free_product(cyclic(2), cyclic(2)), 4);
  check_pair(free_abelian(2), heisenberg(), 4);
}

TEST_CASE("ball exports") {
  CayleyBall b = ball(free_group(2), 2);
  std::string dot = ball_dot(b);
  // 17 nodes: 1 + 4 + 12
  CHECK(b.vertices.size() == 17);
  std::size_t count = 0, pos = 0;
  while ((pos = dot.find("label=", pos)) != std::string::npos) {
    ++count;
    ++pos;
  }
  nlohmann::json j = ball_json(b);
  CHECK(j["vertices"].size() == 17);
  CHECK(j["rank"] == 2);
  CHECK_FALSE(j["closed"].get<bool>());
  // one label per node plus one per positive-generator edge
  CHECK(count == 17 + j["edges"].size());
  MarkedGroup f2 = free_group(2);
  for (const auto& e : j["edges"]) {
    Word from = parse_word(e["from"].get<std::string>(), 2);
    Word to = parse_word(e["to"].get<std::string>(), 2);
    int gen = e["generator"].get<int>();
    CHECK(f2.same_element(from * generator_power(gen, 1, 2), to));
  }
}

TEST_CASE("deterministic ball construction") {
  CayleyBall a = ball(heisenberg(), 3);
  CayleyBall b = ball(heisenberg(), 3);
  REQUIRE(a.vertices.size() == b.vertices.size());
  for (std::size_t i = 0; i < a.vertices.size(); ++i) {
    CHECK(a.vertices[i] == b.vertices[i]);
  }
  CHECK(a.adj == b.adj);
}
