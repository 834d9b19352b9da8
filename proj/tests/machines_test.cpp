#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>

#include "gspace/machines.hpp"

using namespace gspace;

TEST_CASE("run_bounded basics") {
  Program halt = parse_program("HALT");
  RunResult r1 = run_bounded(halt, 5, 10);
  CHECK(r1.halted);
  CHECK(r1.output == 5);

  Program loop = parse_program("DECJZ 1 0");
  CHECK_FALSE(run_bounded(loop, 3, 1000000).halted);

  Program inc = parse_program("INC 0 / HALT");
  RunResult r2 = run_bounded(inc, 3, 10);
  CHECK(r2.halted);
  CHECK(r2.output == 4);

  // pc past the end halts implicitly
  Program fall = parse_program("INC 0");
  CHECK(run_bounded(fall, 0, 10).halted);
}

TEST_CASE("halting is absorbing") {
  Program p = decode_program(constant_zero_index());
  RunResult at = run_bounded(p, 9, 100);
  REQUIRE(at.halted);
  for (std::uint64_t extra : {0ull, 1ull, 50ull}) {
    RunResult later = run_bounded(p, 9, at.steps + extra);
    CHECK(later.halted);
    CHECK(later.output == at.output);
    CHECK(later.steps == at.steps);
  }
}

TEST_CASE("program encoding round-trips and decode is total") {
  for (const char* text : {"HALT", "INC 0 / HALT", "DECJZ 0 2 / DECJZ 1 0",
                           "INC 3 / DECJZ 3 0 / HALT"}) {
    Program p = parse_program(text);
    Program q = decode_program(encode_program(p));
    CHECK(print_program(q) == print_program(p));
  }
  for (MachineIndex n = 0; n < 500; ++n) {
    Program p = decode_program(n);  // never throws
    run_bounded(p, 0, 50);          // never crashes
  }
}

TEST_CASE("built-in machines") {
  for (std::uint64_t p = 1; p <= 10; ++p) {
    RunResult r = run_bounded(halting_machine_index(p), 0, 1000);
    CHECK(r.halted);
    CHECK(r.steps == p);
  }
  for (int v = 0; v < 10; ++v) {
    CHECK_FALSE(run_bounded(looping_machine_index(v), 0, 5000).halted);
  }
  RunResult zero = run_bounded(constant_zero_index(), 17, 1000);
  REQUIRE(zero.halted);
  CHECK(zero.output == 0);
  RunResult one = run_bounded(constant_one_index(), 17, 1000);
  REQUIRE(one.halted);
  CHECK(one.output == 1);
}

TEST_CASE("inseparable P and Q find the constant self-indices") {
  MachineIndex c0 = constant_zero_index();
  MachineIndex c1 = constant_one_index();
  // stage bound from the dovetail schedule: max(index, own halting time)
  std::uint64_t quanta = 100000;
  PqPair pq = inseparable_pq();
  auto p = pq.p.take(2000, quanta);
  auto q = pq.q.take(2000, quanta);
  CHECK(std::find(p.begin(), p.end(), c0) != p.end());
  CHECK(std::find(q.begin(), q.end(), c1) != q.end());
  // disjoint prefixes
  for (std::uint64_t x : p) {
    CHECK(std::find(q.begin(), q.end(), x) == q.end());
  }
}

TEST_CASE("P and Q prefixes are replayable") {
  PqPair pq = inseparable_pq();
  auto first = pq.p.take(10, 3000);
  auto second = pq.p.take(10, 3000);
  CHECK(first == second);
}

TEST_CASE("halting-gated family") {
  PqPair base = inseparable_pq();
  // looping gate: the family matches the base
  PqPair open = pq_halting_family(looping_machine_index(0), base);
  auto base_p = base.p.take(20, 4000);
  auto open_p = open.p.take(20, 8000);
  CHECK(base_p == open_p);

  // halting gate: a finite prefix of the base
  PqPair closed = pq_halting_family(halting_machine_index(3), base);
  auto closed_p = closed.p.take(1000, 100000);
  auto big_base = base.p.take(1000, 100000);
  CHECK(closed_p.size() < big_base.size());
  for (std::size_t i = 0; i < closed_p.size(); ++i) {
    CHECK(closed_p[i] == big_base[i]);  // gating only truncates
  }
}

namespace {

// Synthetic recursive base: P = even numbers, Q = odd numbers, one element
// per quantum, in a deliberately non-monotone order within blocks of 4.
PqPair synthetic_base() {
  auto evens = make_enumerator<std::uint64_t>([]() {
    auto n = std::make_shared<std::uint64_t>(0);
    return [n]() -> std::optional<std::uint64_t> {
      std::uint64_t i = (*n)++;
      std::uint64_t block = i / 2, pos = i % 2;
      return 2 * (2 * block + (pos == 0 ? 1 : 0));  // 2,0,6,4,10,8,...
    };
  });
  auto odds = make_enumerator<std::uint64_t>([]() {
    auto n = std::make_shared<std::uint64_t>(0);
    return [n]() -> std::optional<std::uint64_t> {
      return 2 * (*n)++ + 1;
    };
  });
  return {evens, odds};
}

}  // namespace

TEST_CASE("increasing-extraction family") {
  // While the gate runs, the emitted prefix is strictly increasing.
  PqPair open = pq_nct_family(looping_machine_index(0), synthetic_base());
  auto p = open.p.take(30, 1000);
  REQUIRE(p.size() == 30);
  for (std::size_t i = 1; i < p.size(); ++i) {
    CHECK(p[i] > p[i - 1]);
  }

  // Halting gate at step s: the family equals base ∩ {0..f̂(s-1)}.
  std::uint64_t s = 3;
  PqPair closed = pq_nct_family(halting_machine_index(s), synthetic_base());
  auto pl = closed.p.take(100, 5000);
  // f on the synthetic P: 2,0,6,4,10,...; f̂ = 2,6,10,...; bound = f̂(s-1) = 10
  std::vector<std::uint64_t> sorted = pl;
  std::sort(sorted.begin(), sorted.end());
  CHECK(sorted == std::vector<std::uint64_t>{0, 2, 4, 6, 8, 10});

  // P_l and Q_l stay disjoint
  auto ql = closed.q.take(100, 5000);
  for (std::uint64_t x : pl) {
    CHECK(std::find(ql.begin(), ql.end(), x) == ql.end());
  }
}
