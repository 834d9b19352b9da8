#include <benchmark/benchmark.h>

#include "gspace/catalog.hpp"
#include "gspace/clopen.hpp"
#include "gspace/metric.hpp"

namespace {

using namespace gspace;

void BM_ShortlexRoundTrip(benchmark::State& state) {
  int rank = static_cast<int>(state.range(0));
  for (auto _ : state) {
    for (std::uint64_t n = 0; n < 512; ++n) {
      benchmark::DoNotOptimize(shortlex_index(shortlex_word(n, rank)));
    }
  }
}
BENCHMARK(BM_ShortlexRoundTrip)->Arg(1)->Arg(2)->Arg(4);

void BM_BallFree2(benchmark::State& state) {
  MarkedGroup f2 = free_group(2);
  int radius = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(ball(f2, radius).vertices.size());
  }
}
BENCHMARK(BM_BallFree2)->Arg(3)->Arg(5)->Arg(7);

void BM_BallZ2(benchmark::State& state) {
  MarkedGroup z2 = free_abelian(2);
  int radius = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(ball(z2, radius).vertices.size());
  }
}
BENCHMARK(BM_BallZ2)->Arg(4)->Arg(6)->Arg(8);

void BM_IncoherenceAbBa(benchmark::State& state) {
  for (auto _ : state) {
    BasicClopenSet omega;
    omega.rank = 2;
    omega.relations = {parse_word("ab", 2)};
    omega.irrelations = {parse_word("ba", 2)};
    benchmark::DoNotOptimize(incoherent_semidecide(omega, 10000).status);
  }
}
BENCHMARK(BM_IncoherenceAbBa);

void BM_DistanceCyclic(benchmark::State& state) {
  MarkedGroup z = integers();
  MarkedGroup zn = cyclic(static_cast<long>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(distance(zn, z, 64).neg_exp);
  }
}
BENCHMARK(BM_DistanceCyclic)->Arg(2)->Arg(16)->Arg(64);

}  // namespace

BENCHMARK_MAIN();
