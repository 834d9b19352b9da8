#include "gspace/expr.hpp"

#include <cctype>

#include "gspace/catalog.hpp"

namespace gspace {

namespace {

struct ExprParser {
  const std::string& s;
  std::size_t i = 0;

  void skip_ws() {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
  }
  bool eat(char c) {
    skip_ws();
    if (i < s.size() && s[i] == c) {
      ++i;
      return true;
    }
    return false;
  }
  void expect(char c) {
    if (!eat(c)) {
      throw ParseError(std::string("expected '") + c + "'", i);
    }
  }
  long integer() {
    skip_ws();
    std::size_t start = i;
    long v = 0;
    bool any = false;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) {
      v = v * 10 + (s[i] - '0');
      any = true;
      ++i;
    }
    if (!any) throw ParseError("expected integer", start);
    return v;
  }
  std::string ident() {
    skip_ws();
    std::size_t start = i;
    while (i < s.size() &&
           (std::isalnum(static_cast<unsigned char>(s[i])) || s[i] == '_')) {
      ++i;
    }
    if (start == i) throw ParseError("expected name", start);
    return s.substr(start, i - start);
  }
  std::string until(char terminator) {
    skip_ws();
    std::size_t start = i;
    int depth = 0;
    while (i < s.size()) {
      char c = s[i];
      if (c == '(' || c == '[') ++depth;
      if (c == ')' && depth == 0) break;
      if (c == ')' || c == ']') --depth;
      if (depth == 0 && c == terminator) break;
      ++i;
    }
    return s.substr(start, i - start);
  }

  GroupExpr parse() {
    skip_ws();
    std::size_t start = i;
    std::string head = ident();
    GroupExpr e;
    if (head == "mark") {
      e.kind = GroupExpr::Kind::Mark;
      expect('(');
      e.children.push_back(std::make_unique<GroupExpr>(parse()));
      expect(';');
      while (true) {
        std::string w = until(',');
        // strip trailing space and possible closing paren handled by until
        e.words.push_back(w);
        if (!eat(',')) break;
      }
      expect(')');
      return e;
    }
    if (head == "direct" || head == "free") {
      e.kind = head == "direct" ? GroupExpr::Kind::Direct : GroupExpr::Kind::Free;
      expect('(');
      e.children.push_back(std::make_unique<GroupExpr>(parse()));
      expect(',');
      e.children.push_back(std::make_unique<GroupExpr>(parse()));
      expect(')');
      return e;
    }
    if (head == "limit") {
      e.kind = GroupExpr::Kind::Limit;
      expect('(');
      e.name = ident();
      expect(')');
      return e;
    }
    e.kind = GroupExpr::Kind::Catalog;
    if (head == "Z") {
      skip_ws();
      if (eat('^')) {
        e.name = "Z^k";
        e.params.push_back(integer());
      } else if (eat('/')) {
        e.name = "Z/n";
        e.params.push_back(integer());
      } else {
        e.name = "Z";
      }
      return e;
    }
    if (head == "F" || head == "D" || head == "S" || head == "A") {
      e.name = head;
      e.params.push_back(integer());
      return e;
    }
    if (head == "BS") {
      e.name = "BS";
      expect('(');
      long one = integer();
      if (one != 1) throw ParseError("only BS(1,m) is available", start);
      expect(',');
      e.params.push_back(integer());
      expect(')');
      return e;
    }
    if (head == "Heis" || head == "Lamp" || head == "trivial") {
      e.name = head;
      return e;
    }
    throw ParseError("unknown group '" + head + "'", start);
  }
};

}  // namespace

GroupExpr parse_group_expr(const std::string& text) {
  ExprParser p{text, 0};
  GroupExpr e = p.parse();
  p.skip_ws();
  if (p.i != text.size()) {
    throw ParseError("trailing characters in group expression", p.i);
  }
  return e;
}

std::string print_group_expr(const GroupExpr& e) {
  switch (e.kind) {
    case GroupExpr::Kind::Catalog: {
      if (e.name == "Z^k") return "Z^" + std::to_string(e.params[0]);
      if (e.name == "Z/n") return "Z/" + std::to_string(e.params[0]);
      if (e.name == "BS") return "BS(1," + std::to_string(e.params[0]) + ")";
      if (e.params.empty()) return e.name;
      return e.name + " " + std::to_string(e.params[0]);
    }
    case GroupExpr::Kind::Mark: {
      std::string out = "mark(" + print_group_expr(*e.children[0]) + ";";
      for (std::size_t i = 0; i < e.words.size(); ++i) {
        out += (i ? ", " : " ") + e.words[i];
      }
      return out + ")";
    }
    case GroupExpr::Kind::Direct:
      return "direct(" + print_group_expr(*e.children[0]) + "," +
             print_group_expr(*e.children[1]) + ")";
    case GroupExpr::Kind::Free:
      return "free(" + print_group_expr(*e.children[0]) + "," +
             print_group_expr(*e.children[1]) + ")";
    case GroupExpr::Kind::Limit:
      return "limit(" + e.name + ")";
  }
  return "";
}

MarkedGroup elaborate(const GroupExpr& e) {
  switch (e.kind) {
    case GroupExpr::Kind::Catalog:
      return catalog(e.name, e.params);
    case GroupExpr::Kind::Mark: {
      MarkedGroup g = elaborate(*e.children[0]);
      std::vector<Word> words;
      for (const std::string& w : e.words) {
        words.push_back(parse_word(w, g.rank()));
      }
      return subgroup_marking(g, words);
    }
    case GroupExpr::Kind::Direct:
      return direct_product(elaborate(*e.children[0]), elaborate(*e.children[1]));
    case GroupExpr::Kind::Free:
      return free_product(elaborate(*e.children[0]), elaborate(*e.children[1]));
    case GroupExpr::Kind::Limit:
      return limit(named_sequence(e.name));
  }
  throw SpecError("unreachable group expression kind");
}

MarkedGroup group_from_text(const std::string& text) {
  return elaborate(parse_group_expr(text));
}

}  // namespace gspace
