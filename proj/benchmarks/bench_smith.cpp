#include <benchmark/benchmark.h>

#include <random>

#include "rootdatum/smith.hpp"

namespace {

using namespace rootdatum;

Matrix random_matrix(const Ring& ring, std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<long> entry(-50, 50);
  std::vector<std::vector<mpz_class>> rows(n, std::vector<mpz_class>(n));
  for (auto& row : rows)
    for (auto& x : row) x = entry(rng);
  return Matrix::from_rows(ring, rows);
}

void BM_SmithZ(benchmark::State& state) {
  const Matrix m = random_matrix(Ring::integers(), state.range(0), 7);
  for (auto _ : state) benchmark::DoNotOptimize(smith_normal_form(m));
}
BENCHMARK(BM_SmithZ)->RangeMultiplier(2)->Range(4, 16);

void BM_SmithZ2(benchmark::State& state) {
  const Matrix m = random_matrix(Ring::padic(2, 64), state.range(0), 7);
  for (auto _ : state) benchmark::DoNotOptimize(smith_normal_form(m));
}
BENCHMARK(BM_SmithZ2)->RangeMultiplier(2)->Range(4, 16);

}  // namespace
