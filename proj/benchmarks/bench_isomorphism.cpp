#include <benchmark/benchmark.h>

#include "rootdatum/catalog.hpp"
#include "rootdatum/isomorphism.hpp"

namespace {

using namespace rootdatum;

void run(benchmark::State& state, const char* a, const char* b) {
  const RootDatum x = catalog_datum(a), y = catalog_datum(b);
  x.reflections();
  y.reflections();
  for (auto _ : state) benchmark::DoNotOptimize(find_isomorphism(x, y));
}

void BM_IsoB3C3Z2(benchmark::State& state) { run(state, "B3.sc.Z2", "C3.sc.Z2"); }
void BM_IsoA1Invariant(benchmark::State& state) { run(state, "A1.sc.Z", "A1.ad.Z"); }
void BM_IsoD4Self(benchmark::State& state) { run(state, "D4.sc.Z", "D4.sc.Z"); }
BENCHMARK(BM_IsoB3C3Z2)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_IsoA1Invariant)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_IsoD4Self)->Unit(benchmark::kMillisecond);

}  // namespace
