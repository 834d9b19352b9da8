#include "gspace/cli.hpp"

#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#include <nlohmann/json.hpp>

#include "gspace/catalog.hpp"
#include "gspace/clopen.hpp"
#include "gspace/expr.hpp"
#include "gspace/machines.hpp"
#include "gspace/markov.hpp"
#include "gspace/metric.hpp"
#include "gspace/miller.hpp"
#include "gspace/properties.hpp"

namespace gspace {

namespace {

using nlohmann::json;

struct Args {
  std::vector<std::string> positional;
  std::map<std::string, std::string> flags;
  bool has(const std::string& f) const { return flags.contains(f); }
  std::string get(const std::string& f, const std::string& dflt) const {
    auto it = flags.find(f);
    return it == flags.end() ? dflt : it->second;
  }
  std::uint64_t fuel(std::uint64_t dflt) const {
    auto it = flags.find("fuel");
    return it == flags.end() ? dflt : std::stoull(it->second);
  }
};

Args split_args(const std::vector<std::string>& argv, std::size_t from) {
  Args a;
  static const std::map<std::string, bool> kTakesValue = {
      {"bits", true},    {"fuel", true},   {"dot", false},
      {"json", false},   {"delta", true},  {"radius", true},
      {"sequence", true}, {"machine", true}, {"scan-bits", true},
      {"steps", true},   {"base", true},   {"w", true},
      {"query", true},   {"emit", true},   {"out", true},
      {"extra", true},   {"j", true}};
  for (std::size_t i = from; i < argv.size(); ++i) {
    const std::string& s = argv[i];
    if (s.rfind("--", 0) == 0) {
      std::string name = s.substr(2);
      auto it = kTakesValue.find(name);
      bool takes = it != kTakesValue.end() && it->second;
      if (takes && i + 1 < argv.size()) {
        a.flags[name] = argv[++i];
      } else {
        a.flags[name] = "";
      }
    } else {
      a.positional.push_back(s);
    }
  }
  return a;
}

// Group expressions may arrive as several argv tokens ("F" "2"); glue the
// leading positional arguments into one expression per expected slot.
std::vector<std::string> glue_groups(const std::vector<std::string>& pos,
                                     std::size_t slots,
                                     std::size_t trailing_fixed) {
  if (slots == 0) return {};
  std::vector<std::string> out;
  if (pos.size() < trailing_fixed) throw SpecError("missing arguments");
  std::size_t usable = pos.size() - trailing_fixed;
  if (slots == 1) {
    std::string joined;
    for (std::size_t i = 0; i < usable; ++i) {
      if (!joined.empty()) joined += " ";
      joined += pos[i];
    }
    out.push_back(joined);
    return out;
  }
  // For two group slots, try every split point and take the first where
  // both sides parse.
  for (std::size_t cut = 1; cut < usable; ++cut) {
    std::string left, right;
    for (std::size_t i = 0; i < cut; ++i) {
      if (!left.empty()) left += " ";
      left += pos[i];
    }
    for (std::size_t i = cut; i < usable; ++i) {
      if (!right.empty()) right += " ";
      right += pos[i];
    }
    try {
      parse_group_expr(left);
      parse_group_expr(right);
      out = {left, right};
      return out;
    } catch (const SpecError&) {
      continue;
    }
  }
  throw SpecError("could not split arguments into two group expressions");
}

json dyadic_json(const Dyadic& d) {
  return json{{"distance", d.to_string()}, {"exact", d.is_exact()}};
}

int emit_verdict(const Verdict& v, std::ostream& out) {
  out << v.to_json().dump() << "\n";
  return v.exit_code();
}

int cmd_dist(const Args& a, std::ostream& out) {
  auto groups = glue_groups(a.positional, 2, 0);
  MarkedGroup g = group_from_text(groups[0]);
  MarkedGroup h = group_from_text(groups[1]);
  int bits = static_cast<int>(std::stol(a.get("bits", "64")));
  Dyadic d = distance(g, h, bits);
  out << dyadic_json(d).dump() << "\n";
  return 0;
}

int cmd_cdist(const Args& a, std::ostream& out) {
  auto groups = glue_groups(a.positional, 2, 0);
  MarkedGroup g = group_from_text(groups[0]);
  MarkedGroup h = group_from_text(groups[1]);
  int max_r = static_cast<int>(std::stol(a.get("radius", "6")));
  Dyadic d = cayley_distance(g, h, max_r);
  out << dyadic_json(d).dump() << "\n";
  return 0;
}

int cmd_ball(const Args& a, std::ostream& out) {
  if (a.positional.empty()) throw SpecError("ball needs a group and a radius");
  int radius = static_cast<int>(std::stol(a.positional.back()));
  std::vector<std::string> head(a.positional.begin(), a.positional.end() - 1);
  auto groups = glue_groups(head, 1, 0);
  MarkedGroup g = group_from_text(groups[0]);
  CayleyBall b = ball(g, radius);
  if (a.has("dot")) {
    std::string dot = ball_dot(b);
    if (!a.get("dot", "").empty()) {
      std::ofstream f(a.get("dot", ""));
      f << dot;
      out << json{{"vertices", b.vertices.size()},
                  {"closed", b.closed},
                  {"dot_file", a.get("dot", "")}}
                 .dump()
          << "\n";
    } else {
      out << dot;
    }
    return 0;
  }
  out << ball_json(b).dump() << "\n";
  return 0;
}

int cmd_bit(const Args& a, std::ostream& out) {
  if (a.positional.size() < 2) throw SpecError("bit needs a group and an index");
  std::uint64_t n = std::stoull(a.positional.back());
  std::vector<std::string> head(a.positional.begin(), a.positional.end() - 1);
  auto groups = glue_groups(head, 1, 0);
  MarkedGroup g = group_from_text(groups[0]);
  bool bit = g.bit(n);
  out << json{{"bit", bit ? 1 : 0},
              {"word", print_word(shortlex_word(n, g.rank()))}}
             .dump()
      << "\n";
  return bit ? 0 : 1;
}

int cmd_prop(const Args& a, std::ostream& out) {
  if (a.positional.size() < 2) throw SpecError("prop needs a name and a group");
  std::string name = a.positional[0];
  std::vector<std::string> rest(a.positional.begin() + 1, a.positional.end());
  std::uint64_t fuel = a.fuel(100000);

  // Decidable checks with an optional numeric parameter.
  auto group_and_param = [&](bool needs_param) {
    long param = 0;
    std::vector<std::string> head = rest;
    if (needs_param) {
      if (head.empty()) throw SpecError("missing parameter");
      param = std::stol(head.back());
      head.pop_back();
    }
    auto groups = glue_groups(head, 1, 0);
    return std::pair<MarkedGroup, long>(group_from_text(groups[0]), param);
  };

  if (name == "abelian") {
    auto [g, _] = group_and_param(false);
    bool r = is_abelian(g);
    json witness;
    if (!r) {
      for (int i = 1; i <= g.rank() && witness.is_null(); ++i) {
        for (int j = i + 1; j <= g.rank(); ++j) {
          Word c = commutator(generator_power(i, 1, g.rank()),
                              generator_power(j, 1, g.rank()));
          if (!g.is_relation(c)) {
            witness = print_word(c);
            break;
          }
        }
      }
    }
    out << json{{"status", r ? "verified" : "refuted"}, {"witness", witness}}
               .dump()
        << "\n";
    return r ? 0 : 1;
  }
  if (name == "nilpotent") {
    auto [g, c] = group_and_param(true);
    bool r = nilpotent_class_at_most(g, static_cast<int>(c));
    out << json{{"status", r ? "verified" : "refuted"},
                {"class_at_most", c}}
               .dump()
        << "\n";
    return r ? 0 : 1;
  }
  if (name == "card") {
    auto [g, n] = group_and_param(true);
    bool r = card_at_most(g, static_cast<std::uint64_t>(n));
    out << json{{"status", r ? "verified" : "refuted"},
                {"card_at_most", n}}
               .dump()
        << "\n";
    return r ? 0 : 1;
  }

  auto [g, param] = group_and_param(name == "rank");
  Verdict v;
  if (name == "finite") {
    v = is_finite_semidecide(g, fuel);
  } else if (name == "torsion") {
    v = torsion_semidecide(g, fuel);
  } else if (name == "center") {
    v = center_nontrivial_semidecide(g, fuel);
  } else if (name == "perfect") {
    v = perfect_semidecide(g, fuel);
  } else if (name == "rank") {
    v = rank_at_most_semidecide(g, static_cast<int>(param), fuel);
  } else if (name == "virtually-cyclic") {
    v = virtually_cyclic_semidecide(g, fuel);
  } else if (name == "not-icc") {
    v = icc_refute(g, fuel);
  } else if (name == "not-orderable") {
    v = orderability_refute(g, fuel);
  } else if (name == "not-delta-hyperbolic") {
    int delta = static_cast<int>(std::stol(a.get("delta", "1")));
    int radius = static_cast<int>(std::stol(a.get("radius", "8")));
    v = not_delta_hyperbolic(g, delta, radius);
  } else {
    throw SpecError("unknown property '" + name + "'");
  }
  return emit_verdict(v, out);
}

int cmd_clopen(const Args& a, std::ostream& out) {
  if (a.positional.empty()) throw SpecError("clopen needs a subcommand");
  std::string sub = a.positional[0];
  std::uint64_t fuel = a.fuel(10000);
  if (sub == "member") {
    // clopen member <group...> <clopen>
    if (a.positional.size() < 3) throw SpecError("member needs group and set");
    std::string clopen_text = a.positional.back();
    std::vector<std::string> head(a.positional.begin() + 1,
                                  a.positional.end() - 1);
    auto groups = glue_groups(head, 1, 0);
    MarkedGroup g = group_from_text(groups[0]);
    BasicClopenSet omega = parse_clopen(clopen_text, g.rank());
    bool r = member(g, omega);
    out << json{{"member", r}}.dump() << "\n";
    return r ? 0 : 1;
  }
  if (sub == "incoherent") {
    if (a.positional.size() < 3) {
      throw SpecError("incoherent needs a rank and a set");
    }
    int rank = static_cast<int>(std::stol(a.positional[1]));
    BasicClopenSet omega = parse_clopen(a.positional[2], rank);
    return emit_verdict(incoherent_semidecide(omega, fuel), out);
  }
  if (sub == "subset") {
    if (a.positional.size() < 4) {
      throw SpecError("subset needs a rank and two set lists");
    }
    int rank = static_cast<int>(std::stol(a.positional[1]));
    auto parse_list = [rank](const std::string& text) {
      std::vector<BasicClopenSet> out;
      std::size_t pos = 0;
      while ((pos = text.find('{', pos)) != std::string::npos) {
        std::size_t end = text.find('}', pos);
        if (end == std::string::npos) throw SpecError("unbalanced clopen list");
        out.push_back(parse_clopen(text.substr(pos, end - pos + 1), rank));
        pos = end + 1;
      }
      if (out.empty()) throw SpecError("empty clopen list");
      return out;
    };
    auto u = parse_list(a.positional[2]);
    auto v = parse_list(a.positional[3]);
    return emit_verdict(inclusion_semidecide(u, v, fuel), out);
  }
  throw SpecError("unknown clopen subcommand '" + sub + "'");
}

int cmd_limit(const Args& a, std::ostream& out) {
  if (a.positional.empty()) throw SpecError("limit needs a sequence name");
  GroupSequence seq = named_sequence(a.positional[0]);
  MarkedGroup lim = limit(seq);
  std::uint64_t bits = std::stoull(a.get("bits", "32"));
  std::string expansion;
  for (std::uint64_t n = 0; n < bits; ++n) {
    expansion += lim.bit(n) ? '1' : '0';
  }
  out << json{{"sequence", seq.name}, {"bits", expansion}}.dump() << "\n";
  return 0;
}

int cmd_markov(const Args& a, std::ostream& out) {
  if (a.positional.empty() || a.positional[0] != "demo") {
    throw SpecError("markov supports the 'demo' subcommand");
  }
  GroupSequence seq = named_sequence(a.get("sequence", "cyclic"));
  std::string machine = a.get("machine", "builtin:loop");
  MachineIndex idx;
  if (machine == "builtin:loop") {
    idx = looping_machine_index(0);
  } else if (machine.rfind("builtin:halt@", 0) == 0) {
    idx = halting_machine_index(std::stoull(machine.substr(13)));
  } else {
    idx = std::stoull(machine);
  }
  MarkedGroup gamma = diagonal_group(seq, idx);
  MarkedGroup lim = limit(seq);
  std::uint64_t bits = std::stoull(a.get("scan-bits", "256"));
  Verdict v = distinguish_semidecide(gamma, lim, 2 * bits);
  json j;
  j["machine_index"] = idx;
  j["machine"] = print_program(decode_program(idx));
  j["sequence"] = seq.name;
  j["distinguish"] = v.to_json();
  out << j.dump() << "\n";
  return v.exit_code();
}

int cmd_miller(const Args& a, std::ostream& out) {
  if (a.positional.empty()) throw SpecError("miller needs a subcommand");
  std::string sub = a.positional[0];
  if (sub == "gen") {
    Presentation base = parse_presentation(a.get("base", "<a | >"));
    Word w = parse_word(a.get("w", "a"), base.rank);
    MillerOutput m = step3_presentation(base, w);
    std::string emit = a.get("emit", "l3");
    if (emit == "pi") {
      out << json{{"pi", m.pi.to_string()}}.dump() << "\n";
    } else {
      json rels = json::array();
      for (const Word& r : m.l3.relators) rels.push_back(print_word(r));
      out << json{{"presentation", print_presentation(m.l3)},
                  {"relators", rels}}
                 .dump()
          << "\n";
    }
    return 0;
  }
  if (sub == "wp") {
    MarkedGroup base = group_from_text(a.get("base", "Z"));
    Word w = parse_word(a.get("w", "a"), base.rank());
    MarkedGroup l3 = l3_wp(base, w);
    Word query = parse_word(a.get("query", "a"), l3.rank());
    bool r = l3.is_relation(query);
    out << json{{"is_relation", r}, {"query", print_word(query)}}.dump()
        << "\n";
    return r ? 0 : 1;
  }
  if (sub == "trivialize") {
    Presentation base = parse_presentation(a.get("base", "<a | >"));
    Word w = parse_word(a.get("w", "a"), base.rank);
    MillerOutput m = step3_presentation(base, w);
    Word extra = a.has("extra") ? parse_word(a.get("extra", ""), m.l3.rank)
                                : w.with_rank(m.l3.rank);
    return emit_verdict(trivializes(m, extra, a.fuel(1000000)), out);
  }
  throw SpecError("unknown miller subcommand '" + sub + "'");
}

int cmd_machine(const Args& a, std::ostream& out) {
  if (a.positional.size() < 3 || a.positional[0] != "run") {
    throw SpecError("machine run <program> <input> [--steps N]");
  }
  Program p = parse_program(a.positional[1]);
  std::uint64_t input = std::stoull(a.positional[2]);
  std::uint64_t steps = std::stoull(a.get("steps", "100000"));
  RunResult r = run_bounded(p, input, steps);
  json j;
  j["halted"] = r.halted;
  if (r.halted) {
    j["output"] = r.output;
    j["steps"] = r.steps;
  }
  out << j.dump() << "\n";
  return r.halted ? 0 : 2;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err) {
  if (args.empty()) {
    err << "usage: gspace <dist|cdist|ball|bit|prop|clopen|limit|markov|"
           "miller|machine> ...\n";
    return 3;
  }
  try {
    Args a = split_args(args, 1);
    const std::string& cmd = args[0];
    if (cmd == "dist") return cmd_dist(a, out);
    if (cmd == "cdist") return cmd_cdist(a, out);
    if (cmd == "ball") return cmd_ball(a, out);
    if (cmd == "bit") return cmd_bit(a, out);
    if (cmd == "prop") return cmd_prop(a, out);
    if (cmd == "clopen") return cmd_clopen(a, out);
    if (cmd == "limit") return cmd_limit(a, out);
    if (cmd == "markov") return cmd_markov(a, out);
    if (cmd == "miller") return cmd_miller(a, out);
    if (cmd == "machine") return cmd_machine(a, out);
    err << "unknown command '" << cmd << "'\n";
    return 3;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 3;
  }
}

}  // namespace gspace
