#include <benchmark/benchmark.h>

#include "rootdatum/catalog.hpp"
#include "rootdatum/matrix_group.hpp"

namespace {

using namespace rootdatum;

const char* const kKeys[] = {"B4.sc.Z", "F4.sc.Z2", "E6.ad.Z", "DI4"};

void BM_Closure(benchmark::State& state) {
  const RootDatum d = catalog_datum(kKeys[state.range(0)]);
  for (auto _ : state) {
    MatrixGroup g = generate_group(d.ring(), d.rank(), d.generators(), kDefaultClosureCap);
    benchmark::DoNotOptimize(g.order());
  }
  state.SetLabel(kKeys[state.range(0)]);
}
BENCHMARK(BM_Closure)->DenseRange(0, 3)->Unit(benchmark::kMillisecond);

}  // namespace
