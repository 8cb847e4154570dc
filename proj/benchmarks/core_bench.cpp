#include <benchmark/benchmark.h>

#include <memory>

#include "rslab/equivalence.hpp"
#include "rslab/pnt.hpp"

namespace {

using namespace rslab;

void BM_SievePrimes(benchmark::State& state) {
  const auto limit = static_cast<u64>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(sieve_primes(limit).size());
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_SievePrimes)->Arg(1'000'000)->Arg(10'000'000)->Unit(benchmark::kMillisecond);

void BM_TauTable(benchmark::State& state) {
  const auto limit = static_cast<u64>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(ramanujan_tau_table(limit).limit());
}
BENCHMARK(BM_TauTable)->Arg(100'000)->Arg(1'000'000)->Unit(benchmark::kMillisecond);

void BM_TrivialStream(benchmark::State& state) {
  const BaseChangedRep bc{AutomorphicRep::trivial(), CyclicExtension::make(5, 2)};
  const auto pair = RankinPair::same_field(bc, bc);
  const auto limit = static_cast<u64>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(generate_stream(pair, limit).entries.size());
}
BENCHMARK(BM_TrivialStream)->Arg(1'000'000)->Unit(benchmark::kMillisecond);

void BM_DeltaStreamAndSum(benchmark::State& state) {
  const auto limit = static_cast<u64>(state.range(0));
  const auto table = std::make_shared<const CuspFormTable>(ramanujan_tau_table(limit));
  const BaseChangedRep bc{AutomorphicRep::from_cusp_form(table), CyclicExtension::make(7, 3)};
  const auto pair = RankinPair::same_field(bc, bc);
  for (auto _ : state) {
    const auto stream = generate_stream(pair, limit);
    benchmark::DoNotOptimize(partial_sum(stream, static_cast<double>(limit)));
  }
}
BENCHMARK(BM_DeltaStreamAndSum)->Arg(100'000)->Unit(benchmark::kMillisecond);

void BM_TwistedPairsScan(benchmark::State& state) {
  const auto e = CyclicExtension::make(5, 2);
  const auto f = CyclicExtension::make(11, 5);
  const auto pi = AutomorphicRep::from_character(make_character(13, 4));
  const auto pi_prime = twist(pi, e.twist_character(1) * f.twist_character(-3), 2.5);
  const auto primes = default_test_primes(pi, pi_prime, e, f);
  for (auto _ : state) benchmark::DoNotOptimize(twisted_pairs(pi, e, pi_prime, f, primes).size());
}
BENCHMARK(BM_TwistedPairsScan);

}  // namespace

BENCHMARK_MAIN();
