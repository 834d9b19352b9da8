#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "gspace/oracle.hpp"

namespace gspace {

// Distances on the space of marked groups take values in {0} ∪ {2^-n} ∪ {2}
// only, so an exact-or-interval dyadic replaces general computable reals.
// AtMost(n) is the interval certificate [0, 2^-n].
struct Dyadic {
  enum class Kind { Zero, Two, Exact, AtMost } kind = Kind::Zero;
  int neg_exp = 0;  // value or bound is 2^{-neg_exp}

  static Dyadic zero() { return {Kind::Zero, 0}; }
  static Dyadic two() { return {Kind::Two, 0}; }
  static Dyadic exact(int n) { return {Kind::Exact, n}; }
  static Dyadic at_most(int n) { return {Kind::AtMost, n}; }

  bool is_exact() const { return kind == Kind::Exact || kind == Kind::Two; }
  // Upper bound as a double, for comparisons in tests.
  double upper() const;
  std::string to_string() const;
  bool operator==(const Dyadic&) const = default;
};

// First-disagreeing-bit distance, computed on bits 0..precision. Exact when
// a disagreement is found, AtMost(precision + 1) otherwise, Two across ranks.
Dyadic distance(const MarkedGroup& g, const MarkedGroup& h, int precision);

// Ball of the labelled Cayley graph. Vertices are shortlex normal forms in
// BFS discovery order (which coincides with shortlex order); adj[v][p] is
// the vertex index of v * letter(p) (letters in the fixed order, positives
// then inverses) or -1 when the product leaves the ball.
struct CayleyBall {
  int rank = 0;
  int radius = 0;
  bool closed = false;  // stable under every generator: the whole group
  std::vector<Word> vertices;
  std::vector<int> sphere_start;  // sphere_start[r] = first index at distance r
  std::vector<std::vector<int>> adj;

  int vertex_count_at_radius(int r) const {
    return r + 1 < static_cast<int>(sphere_start.size())
               ? sphere_start[static_cast<std::size_t>(r + 1)]
               : static_cast<int>(vertices.size());
  }
};

CayleyBall ball(const MarkedGroup& g, int radius);

// Ball-comparison distance: 2^-r when balls of radius r agree and balls of
// radius r+1 differ, compared by canonical breadth-first relabelling from
// the root. AtMost(max_r) when all compared balls agree; Two across ranks.
Dyadic cayley_distance(const MarkedGroup& g, const MarkedGroup& h, int max_r);

// Canonical label-free signature of the radius-r sub-ball; equal signatures
// mean isomorphic rooted labelled balls. Radius 0 carries no edge data.
std::vector<int> ball_signature(const CayleyBall& b, int r);

std::string ball_dot(const CayleyBall& b);
nlohmann::json ball_json(const CayleyBall& b);

}  // namespace gspace
