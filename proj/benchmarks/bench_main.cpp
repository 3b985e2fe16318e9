#include <benchmark/benchmark.h>

#include "sievelab/characters.hpp"
#include "sievelab/diophantine.hpp"
#include "sievelab/equidist.hpp"
#include "sievelab/gap_lab.hpp"
#include "sievelab/prime_engine.hpp"
#include "sievelab/sieve_sums.hpp"
#include "sievelab/variational.hpp"

using namespace sievelab;

namespace {

const Tables& shared_tables() {
  static const Tables t = build_tables(2'100'000);
  return t;
}

void BM_PrimeTable(benchmark::State& state) {
  const auto n = static_cast<std::uint64_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(PrimeTable::build(n).primes().size());
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_PrimeTable)->Arg(1 << 20)->Arg(1 << 24)->Unit(benchmark::kMillisecond);

void BM_ArithmeticTables(benchmark::State& state) {
  const auto n = static_cast<std::uint64_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(ArithmeticTables::build(n).limit());
}
BENCHMARK(BM_ArithmeticTables)->Arg(1 << 20)->Unit(benchmark::kMillisecond);

void BM_SmallGaps(benchmark::State& state) {
  const auto& t = shared_tables();
  const auto C = SetDescriptor::whole();
  for (auto _ : state) benchmark::DoNotOptimize(pi_small_gaps(C, 1'000'000, 0.5, t.primes).count_pi);
}
BENCHMARK(BM_SmallGaps)->Unit(benchmark::kMillisecond);

void BM_BohrMembership(benchmark::State& state) {
  const auto C = SetDescriptor::bohr({ExactReal::integer(0), ExactReal::parse("sqrt(2)")}, mpq_class(1, 2));
  for (auto _ : state) benchmark::DoNotOptimize(membership(C, 1, 1'000'000).size());
}
BENCHMARK(BM_BohrMembership)->Unit(benchmark::kMillisecond);

void BM_MkLowerBound(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(mk_lower_bound(5, static_cast<int>(state.range(0))).mk_lower);
}
BENCHMARK(BM_MkLowerBound)->Arg(4)->Arg(7)->Unit(benchmark::kMillisecond);

void BM_ThreeDistance(benchmark::State& state) {
  const ExactReal alpha = ExactReal::parse("golden");
  for (auto _ : state) benchmark::DoNotOptimize(three_distance_order(alpha, 10'000).violations.size());
}
BENCHMARK(BM_ThreeDistance)->Unit(benchmark::kMillisecond);

void BM_Characters(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(build_characters(static_cast<std::uint64_t>(state.range(0))).size());
}
BENCHMARK(BM_Characters)->Arg(1000)->Arg(30030);

void BM_Vaughan(benchmark::State& state) {
  const auto& t = shared_tables();
  const ArithmeticFunction one = [](std::uint64_t) { return std::complex<double>(1.0); };
  for (auto _ : state) benchmark::DoNotOptimize(vaughan_decompose(100'000, 46, 46, one, t.arith).total);
}
BENCHMARK(BM_Vaughan)->Unit(benchmark::kMillisecond);

void BM_SumS1(benchmark::State& state) {
  const auto& t = shared_tables();
  const SieveWeights w = lambda_from_y(SmoothFunction::one_minus_sum(1), 27.5, 30, {}, t.arith);
  const SieveSumOptions opt{0.05, 30, 1};
  for (auto _ : state)
    benchmark::DoNotOptimize(sum_S1(SetDescriptor::whole(), 1'000'000, KTuple({0}), w, opt, nullptr));
}
BENCHMARK(BM_SumS1)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
