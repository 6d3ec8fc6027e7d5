#include <benchmark/benchmark.h>

#include "rootdatum/catalog.hpp"
#include "rootdatum/molien.hpp"

namespace {

using namespace rootdatum;

const char* const kKeys[] = {"A4.sc.Z", "C4.sc.Z2", "F4.sc.Z", "DI4"};

void BM_MolienDegrees(benchmark::State& state) {
  const RootDatum d = catalog_datum(kKeys[state.range(0)]);
  const MatrixGroup& w = d.weyl_group();  // enumerated once, outside the loop
  for (auto _ : state) benchmark::DoNotOptimize(molien_degrees(w));
  state.SetLabel(kKeys[state.range(0)]);
}
BENCHMARK(BM_MolienDegrees)->DenseRange(0, 3)->Unit(benchmark::kMillisecond);

}  // namespace
