#include "gspace/metric.hpp"

#include <cmath>
#include <sstream>
#include <unordered_map>

namespace gspace {

double Dyadic::upper() const {
  switch (kind) {
    case Kind::Zero: return 0.0;
    case Kind::Two: return 2.0;
    default: return std::ldexp(1.0, -neg_exp);
  }
}

std::string Dyadic::to_string() const {
  switch (kind) {
    case Kind::Zero: return "0";
    case Kind::Two: return "2";
    case Kind::Exact:
      return neg_exp == 0 ? "2^0" : "2^-" + std::to_string(neg_exp);
    default: return "<=2^-" + std::to_string(neg_exp);
  }
}

Dyadic distance(const MarkedGroup& g, const MarkedGroup& h, int precision) {
  if (g.rank() != h.rank()) return Dyadic::two();
  for (int n = 0; n <= precision; ++n) {
    if (g.bit(static_cast<std::uint64_t>(n)) !=
        h.bit(static_cast<std::uint64_t>(n))) {
      return Dyadic::exact(n);
    }
  }
  return Dyadic::at_most(precision + 1);
}

CayleyBall ball(const MarkedGroup& g, int radius) {
  if (radius < 0) throw SpecError("ball requires radius >= 0");
  int k = g.rank();
  CayleyBall b;
  b.rank = k;
  b.radius = radius;
  b.vertices.push_back(Word(k));
  b.sphere_start.push_back(0);

  auto letter_at = [k](int p) {
    return static_cast<Letter>(p < k ? p + 1 : -(p - k + 1));
  };
  std::unordered_map<Word, int, WordHash> by_word;
  by_word.emplace(Word(k), 0);
  auto find_vertex = [&](const Word& w) -> int {
    if (g.has_normal_form()) {
      auto it = by_word.find(g.normal_form(w));
      return it == by_word.end() ? -1 : it->second;
    }
    // exact-word hit first, then oracle equality
    if (auto it = by_word.find(w); it != by_word.end()) return it->second;
    for (std::size_t i = 0; i < b.vertices.size(); ++i) {
      if (g.same_element(w, b.vertices[i])) return static_cast<int>(i);
    }
    return -1;
  };
  auto record_vertex = [&](const Word& w) {
    Word v = g.has_normal_form() ? g.normal_form(w) : w;
    by_word.emplace(v, static_cast<int>(b.vertices.size()));
    b.vertices.push_back(v);
  };

  // Layered BFS; trying letters in the fixed order from vertices in
  // discovery order makes the vertex list the shortlex normal forms.
  int layer_begin = 0;
  for (int d = 0; d < radius; ++d) {
    int layer_end = static_cast<int>(b.vertices.size());
    b.sphere_start.push_back(layer_end);
    for (int vi = layer_begin; vi < layer_end; ++vi) {
      for (int p = 0; p < 2 * k; ++p) {
        Word w = b.vertices[static_cast<std::size_t>(vi)] *
                 unsafe_word({letter_at(p)}, k);
        if (find_vertex(w) == -1) record_vertex(w);
      }
    }
    if (static_cast<int>(b.vertices.size()) == layer_end) break;  // closed
    layer_begin = layer_end;
  }
  while (static_cast<int>(b.sphere_start.size()) <= radius) {
    b.sphere_start.push_back(static_cast<int>(b.vertices.size()));
  }

  // Adjacency over the completed vertex set.
  b.closed = true;
  b.adj.assign(b.vertices.size(), std::vector<int>(2 * k, -1));
  for (std::size_t vi = 0; vi < b.vertices.size(); ++vi) {
    for (int p = 0; p < 2 * k; ++p) {
      Word w = b.vertices[vi] * unsafe_word({letter_at(p)}, k);
      int t = find_vertex(w);
      b.adj[vi][static_cast<std::size_t>(p)] = t;
      if (t == -1) b.closed = false;
    }
  }
  return b;
}

std::vector<int> ball_signature(const CayleyBall& b, int r) {
  std::vector<int> sig;
  int n = b.vertex_count_at_radius(r);
  sig.push_back(n);
  for (std::size_t i = 1; i < b.sphere_start.size() &&
                          static_cast<int>(i) <= r;
       ++i) {
    sig.push_back(b.sphere_start[i]);
  }
  if (r == 0) return sig;  // root only, no edge data
  for (int v = 0; v < n; ++v) {
    for (int t : b.adj[static_cast<std::size_t>(v)]) {
      sig.push_back(t >= 0 && t < n ? t : -1);
    }
  }
  return sig;
}

Dyadic cayley_distance(const MarkedGroup& g, const MarkedGroup& h, int max_r) {
  if (g.rank() != h.rank()) return Dyadic::two();
  if (max_r < 0) throw SpecError("cayley_distance requires max_r >= 0");
  CayleyBall bg = ball(g, max_r);
  CayleyBall bh = ball(h, max_r);
  for (int r = 0; r <= max_r; ++r) {
    if (ball_signature(bg, r) != ball_signature(bh, r)) {
      return Dyadic::exact(r - 1);  // balls of radius r-1 agree, r differ
    }
  }
  return Dyadic::at_most(max_r);
}

std::string ball_dot(const CayleyBall& b) {
  std::ostringstream os;
  os << "digraph ball {\n";
  for (std::size_t i = 0; i < b.vertices.size(); ++i) {
    os << "  n" << i << " [label=\"" << print_word(b.vertices[i]) << "\"];\n";
  }
  for (std::size_t v = 0; v < b.vertices.size(); ++v) {
    for (int p = 0; p < b.rank; ++p) {
      int t = b.adj[v][static_cast<std::size_t>(p)];
      if (t >= 0) {
        os << "  n" << v << " -> n" << t << " [label=\"s" << (p + 1)
           << "\"];\n";
      }
    }
  }
  os << "}\n";
  return os.str();
}

nlohmann::json ball_json(const CayleyBall& b) {
  nlohmann::json vertices = nlohmann::json::array();
  for (const Word& w : b.vertices) vertices.push_back(print_word(w));
  nlohmann::json edges = nlohmann::json::array();
  for (std::size_t v = 0; v < b.vertices.size(); ++v) {
    for (int p = 0; p < b.rank; ++p) {
      int t = b.adj[v][static_cast<std::size_t>(p)];
      if (t >= 0) {
        edges.push_back({{"from", print_word(b.vertices[v])},
                         {"generator", p + 1},
                         {"to", print_word(b.vertices[static_cast<std::size_t>(t)])}});
      }
    }
  }
  return nlohmann::json{{"rank", b.rank},
                        {"radius", b.radius},
                        {"closed", b.closed},
                        {"vertices", vertices},
                        {"edges", edges}};
}

}  // namespace gspace
