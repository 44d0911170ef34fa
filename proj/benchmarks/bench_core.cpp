#include <benchmark/benchmark.h>

#include "muipc/eliminate.hpp"
#include "muipc/heyting.hpp"
#include "muipc/ordinals.hpp"
#include "muipc/prover.hpp"

using namespace muipc;

static void BM_ParsePrint(benchmark::State& state) {
  Formula f = family_phi_n(4);
  std::string text = f.to_string();
  for (auto _ : state) {
    Formula g = parse(text);
    benchmark::DoNotOptimize(g);
  }
}
BENCHMARK(BM_ParsePrint);

static void BM_ProveDistribution(benchmark::State& state) {
  Formula lhs = parse("a /\\ (b \\/ c)");
  Formula rhs = parse("(a /\\ b) \\/ (a /\\ c)");
  for (auto _ : state) {
    Prover p;  // fresh memo each round, measuring raw search
    benchmark::DoNotOptimize(p.equiv(lhs, rhs));
  }
}
BENCHMARK(BM_ProveDistribution);

static void BM_ClosureOrdinalPhiN(benchmark::State& state) {
  Formula f = family_phi_n(static_cast<unsigned>(state.range(0)));
  for (auto _ : state) {
    Prover p;
    benchmark::DoNotOptimize(closure_ordinal(f, "x", p).value);
  }
}
BENCHMARK(BM_ClosureOrdinalPhiN)->Arg(1)->Arg(2)->Arg(3);

static void BM_EliminateTwoJoin(benchmark::State& state) {
  Formula f = parse("mu x. (((x -> c) -> a) \\/ ((x -> d) -> b))");
  for (auto _ : state) {
    Prover p;
    benchmark::DoNotOptimize(eliminate_all(f, p).first);
  }
}
BENCHMARK(BM_EliminateTwoJoin);

static void BM_UpsetAlgebra(benchmark::State& state) {
  FinitePoset p = kn_model(3).poset;
  for (auto _ : state) {
    benchmark::DoNotOptimize(FiniteHeytingAlgebra::upset_algebra(p));
  }
}
BENCHMARK(BM_UpsetAlgebra);

static void BM_LfpIterateKn(benchmark::State& state) {
  KnModel m = kn_model(3);
  Formula f = family_phi_n(3);
  for (auto _ : state) {
    benchmark::DoNotOptimize(lfp_iterate(f, "x", m.algebra, m.valuation).steps);
  }
}
BENCHMARK(BM_LfpIterateKn);

BENCHMARK_MAIN();
