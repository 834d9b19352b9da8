#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sstream>

#include <nlohmann/json.hpp>

#include "gspace/cli.hpp"
#include "gspace/expr.hpp"

using namespace gspace;
using nlohmann::json;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

}  // namespace

TEST_CASE("group expression parsing and elaboration") {
  CHECK(group_from_text("Z/5").name() == "Z/5");
  CHECK(group_from_text("Z^3").rank() == 3);
  CHECK(group_from_text("F 2").rank() == 2);
  CHECK(group_from_text("BS(1,5)").name() == "BS(1,5)");
  CHECK(group_from_text("mark(Z; a, a^3)").rank() == 2);
  CHECK(group_from_text("free(Z/2,Z/2)").rank() == 2);
  CHECK(group_from_text("direct(Z,Z)").rank() == 2);
  CHECK(group_from_text("limit(cyclicseq)").rank() == 1);
  CHECK(group_from_text("mark(Z^2; [a,b], a)").rank() == 2);
  CHECK_THROWS_AS(group_from_text("Q"), ParseError);
  CHECK_THROWS_AS(group_from_text("BS(2,3)"), ParseError);

  // free(Z/2,Z/2) elaborates to the infinite dihedral combinator
  MarkedGroup dinf = group_from_text("free(Z/2,Z/2)");
  CHECK_FALSE(dinf.is_relation(parse_word("(ab)^3", 2)));
  CHECK(dinf.is_relation(parse_word("a^2", 2)));
}

TEST_CASE("parse-print round trip") {
  for (const char* text :
       {"Z", "Z^2", "Z/5", "F 2", "BS(1,5)", "D 4", "S 3", "A 5", "Heis",
        "Lamp", "trivial", "mark(Z; a, a^3)", "direct(Z,Z/2)",
        "free(Z/2,Z/2)", "limit(cyclicseq)", "mark(free(Z/2,Z/2); ab)"}) {
    GroupExpr e = parse_group_expr(text);
    std::string printed = print_group_expr(e);
    GroupExpr again = parse_group_expr(printed);
    CHECK(print_group_expr(again) == printed);
  }
}

TEST_CASE("dist command") {
  Result r = run({"dist", "Z/2", "Z", "--bits", "10"});
  CHECK(r.code == 0);
  CHECK(r.out == "{\"distance\":\"2^-3\",\"exact\":true}\n");
  Result r2 = run({"dist", "Z/3", "Z", "--bits", "10"});
  CHECK(r2.out == "{\"distance\":\"2^-5\",\"exact\":true}\n");
  Result cross = run({"dist", "Z", "Z^2"});
  CHECK(json::parse(cross.out)["distance"] == "2");
}

TEST_CASE("cdist command") {
  Result r = run({"cdist", "Z/10", "Z", "--radius", "8"});
  CHECK(r.code == 0);
  CHECK(json::parse(r.out)["distance"] == "2^-4");
}

TEST_CASE("prop command exit codes and witnesses") {
  Result refuted = run({"prop", "abelian", "F", "2"});
  CHECK(refuted.code == 1);
  CHECK(json::parse(refuted.out)["witness"] == "ABab");

  Result verified = run({"prop", "abelian", "Z^2"});
  CHECK(verified.code == 0);

  Result unknown = run({"prop", "torsion", "F", "2", "--fuel", "500"});
  CHECK(unknown.code == 2);

  Result torsion = run({"prop", "torsion", "Lamp", "--fuel", "1000"});
  CHECK(torsion.code == 0);
  CHECK(json::parse(torsion.out)["witness"]["element"] == "a");
}

TEST_CASE("ball command") {
  Result dot = run({"ball", "F 2", "2", "--dot"});
  CHECK(dot.code == 0);
  std::size_t nodes = 0, pos = 0;
  while ((pos = dot.out.find("label=", pos)) != std::string::npos) {
    ++nodes;
    ++pos;
  }
  // 17 node labels + 16 tree edge labels
  CHECK(nodes == 33);

  Result j = run({"ball", "Z/5", "2"});
  auto parsed = json::parse(j.out);
  CHECK(parsed["vertices"].size() == 5);
  CHECK(parsed["closed"] == true);
}

TEST_CASE("bit command") {
  Result r = run({"bit", "Z", "3"});
  CHECK(r.code == 1);
  CHECK(json::parse(r.out)["word"] == "aa");
  Result r2 = run({"bit", "Z/2", "3"});
  CHECK(r2.code == 0);
}

TEST_CASE("clopen commands") {
  Result member = run({"clopen", "member", "BS(1,5)", "{R: bab^-1a^-5 | S: ab^-1}"});
  CHECK(member.code == 0);
  Result incoherent =
      run({"clopen", "incoherent", "2", "{R: ab | S: ba}", "--fuel", "10000"});
  CHECK(incoherent.code == 0);
  Result subset = run({"clopen", "subset", "2", "{R: ab | S:}",
                       "{R: ba | S:}", "--fuel", "10000"});
  CHECK(subset.code == 0);
  Result open_subset = run({"clopen", "subset", "2", "{R: | S: (ab)^2}",
                            "{R: b^2 | S:}", "--fuel", "2000"});
  CHECK(open_subset.code == 2);
}

TEST_CASE("limit, markov, machine, miller commands") {
  Result lim = run({"limit", "cyclicseq", "--bits", "8"});
  CHECK(lim.code == 0);
  CHECK(json::parse(lim.out)["bits"] == "10000000");

  Result loop = run({"markov", "demo", "--sequence", "cyclic", "--machine",
                     "builtin:loop", "--scan-bits", "64"});
  CHECK(loop.code == 2);
  Result halt = run({"markov", "demo", "--sequence", "cyclic", "--machine",
                     "builtin:halt@2", "--scan-bits", "64"});
  CHECK(halt.code == 0);

  Result m = run({"machine", "run", "INC 0 / HALT", "3", "--steps", "10"});
  CHECK(m.code == 0);
  CHECK(json::parse(m.out)["output"] == 4);

  Result gen = run({"miller", "gen", "--base", "<a | >", "--w", "a"});
  CHECK(gen.code == 0);
  CHECK(json::parse(gen.out)["relators"].size() == 4);

  Result wp = run({"miller", "wp", "--base", "Z", "--w", "a", "--query", "a"});
  CHECK(wp.code == 1);
  Result wp2 = run({"miller", "wp", "--base", "Z", "--w", "a", "--query",
                    "b^-1cb(d^-1c^-1dcd)^-1"});
  CHECK(wp2.code == 0);
}

TEST_CASE("byte-identical output across runs") {
  std::vector<std::vector<std::string>> invocations = {
      {"dist", "Z/2", "Z", "--bits", "10"},
      {"ball", "F 2", "2", "--dot"},
      {"prop", "center", "Heis", "--fuel", "100000"},
      {"clopen", "incoherent", "2", "{R: ab | S: ba}", "--fuel", "5000"},
      {"miller", "trivialize", "--base", "<a | >", "--w", "a", "--fuel",
       "1000000"},
  };
  for (const auto& argv : invocations) {
    Result a = run(argv);
    Result b = run(argv);
    CHECK(a.code == b.code);
    CHECK(a.out == b.out);
  }
}

TEST_CASE("malformed input exits 3") {
  CHECK(run({"dist", "Zebra", "Z"}).code == 3);
  CHECK(run({"nonsense"}).code == 3);
  CHECK(run({"prop", "unknown-prop", "Z"}).code == 3);
  CHECK(run({"machine", "run", "FLY 1", "0"}).code == 3);
  CHECK(run({}).code == 3);
}

TEST_CASE("verdict json schema round-trips") {
  Result r = run({"prop", "torsion", "Lamp", "--fuel", "1000"});
  auto parsed = json::parse(r.out);
  CHECK(parsed.contains("status"));
  CHECK(parsed.contains("witness"));
  CHECK(parsed.contains("fuel_spent"));
  CHECK(parsed["status"].is_string());
  CHECK(parsed["fuel_spent"].is_number_unsigned());
}
