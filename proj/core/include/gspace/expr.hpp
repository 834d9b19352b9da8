#pragma once

#include <memory>
#include <string>
#include <vector>

#include "gspace/oracle.hpp"

namespace gspace {

// Abstract syntax of the CLI group grammar:
//   Z | Z^k | Z/n | F k | BS(1,m) | D n | S n | A n | Heis | Lamp | trivial
//   | mark(<group>; w1, ..., wj) | direct(G,H) | free(G,H) | limit(<seq>)
struct GroupExpr {
  enum class Kind { Catalog, Mark, Direct, Free, Limit };
  Kind kind = Kind::Catalog;
  std::string name;              // catalog name or sequence name
  std::vector<long> params;      // catalog parameters
  std::vector<std::string> words;  // marking words (parsed at elaboration)
  std::vector<std::unique_ptr<GroupExpr>> children;
};

GroupExpr parse_group_expr(const std::string& text);
std::string print_group_expr(const GroupExpr& e);

// Resolves the expression into a marked group; rank checks happen here.
MarkedGroup elaborate(const GroupExpr& e);

// Convenience: parse + elaborate.
MarkedGroup group_from_text(const std::string& text);

}  // namespace gspace
