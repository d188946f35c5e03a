#include <benchmark/benchmark.h>

#include "emu/energy.hpp"
#include "emu/parity.hpp"
#include "emu/random.hpp"
#include "emu/reduction.hpp"

namespace {

using namespace emu;

WeightedGameStructure bench_game(int vars) {
  Rng rng(1234 + static_cast<std::uint64_t>(vars));
  RandomGameOptions opt;
  opt.min_vars = vars;
  opt.max_vars = vars;
  opt.max_weight = 3;
  return random_game(rng, opt);
}

void BM_Ecpre(benchmark::State& state) {
  const auto g = bench_game(static_cast<int>(state.range(0)));
  const Arena arena = Arena::from_game(g);
  Rng rng(5);
  EnergyFunction f(16, arena.num_states());
  for (std::size_t s = 0; s < f.size(); ++s) f.set(s, EnergyValue(static_cast<std::uint64_t>(rng.uniform(0, 16))));
  for (auto _ : state) benchmark::DoNotOptimize(ecpre(arena, f));
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * arena.total_moves()));
}
BENCHMARK(BM_Ecpre)->DenseRange(4, 12, 4);

void BM_EvalEnergyBuchi(benchmark::State& state) {
  const auto g = bench_game(static_cast<int>(state.range(0)));
  const Arena arena = Arena::from_game(g);
  const auto c = static_cast<std::uint64_t>(state.range(1));
  const Formula psi = builtin::buchi(Assertion::variable(g.vars().name(0)));
  for (auto _ : state) benchmark::DoNotOptimize(eval_energy(g.vars(), arena, c, psi));
}
BENCHMARK(BM_EvalEnergyBuchi)->Args({4, 8})->Args({8, 8})->Args({8, 64})->Args({10, 16});

void BM_ReductionOracle(benchmark::State& state) {
  const auto g = bench_game(static_cast<int>(state.range(0)));
  const auto c = static_cast<std::uint64_t>(state.range(1));
  const Formula psi = builtin::buchi(Assertion::variable(g.vars().name(0)));
  for (auto _ : state) benchmark::DoNotOptimize(oracle_min_credit_sys(g, c, psi));
}
BENCHMARK(BM_ReductionOracle)->Args({4, 8})->Args({6, 8})->Args({6, 32});

void BM_Zielonka(benchmark::State& state) {
  Rng rng(77);
  EnergyParityGame g;
  while (g.size() < static_cast<std::size_t>(state.range(0))) {
    g = random_energy_parity_game(rng, static_cast<std::size_t>(state.range(0)), 4, 2);
  }
  const ParityGame unfolded = unfold_with_bound(g, 8);
  for (auto _ : state) benchmark::DoNotOptimize(solve_parity(unfolded));
  state.counters["states"] = static_cast<double>(unfolded.size());
}
BENCHMARK(BM_Zielonka)->Arg(16)->Arg(64)->Arg(256);

}  // namespace

BENCHMARK_MAIN();
