// Parallel kernels against their single-threaded references.
#include <benchmark/benchmark.h>

#include "mahler/polynomial.hpp"
#include "mahler/xmetric.hpp"

using namespace mahler;

namespace {

std::vector<IntPolynomial> signed_digit_polys(std::size_t degree, std::size_t count) {
  std::vector<IntPolynomial> out;
  for (std::size_t code = 0; out.size() < count; ++code) {
    std::vector<BigInt> c(degree + 1);
    std::size_t k = code;
    for (auto& x : c) {
      x = static_cast<long>(k % 3) - 1;
      k /= 3;
    }
    c.front() = 1;
    c.back() = 1;
    out.emplace_back(c);
  }
  return out;
}

void BM_MeasureBatch(benchmark::State& state) {
  const auto polys = signed_digit_polys(8, 512);
  for (auto _ : state) benchmark::DoNotOptimize(measure_batch(polys));
}

void BM_MeasureBatchSerial(benchmark::State& state) {
  const auto polys = signed_digit_polys(8, 512);
  for (auto _ : state) benchmark::DoNotOptimize(measure_batch_serial(polys));
}

void BM_Search(benchmark::State& state) {
  const ExponentVector t = ExponentVector::parse("30");
  for (auto _ : state) benchmark::DoNotOptimize(mx_search(t, XParameter::parse("2")));
}

void BM_SearchSerial(benchmark::State& state) {
  const ExponentVector t = ExponentVector::parse("30");
  for (auto _ : state) benchmark::DoNotOptimize(mx_search_serial(t, XParameter::parse("2")));
}

void BM_Curve(benchmark::State& state) {
  const ExponentVector t = ExponentVector::parse("12");
  const auto grid = default_grid();
  for (auto _ : state) benchmark::DoNotOptimize(mx_curve(t, grid));
}

void BM_CurveSerial(benchmark::State& state) {
  const ExponentVector t = ExponentVector::parse("12");
  const auto grid = default_grid();
  for (auto _ : state) benchmark::DoNotOptimize(mx_curve_serial(t, grid));
}

}  // namespace

BENCHMARK(BM_MeasureBatch)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_MeasureBatchSerial)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_Search)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_SearchSerial)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_Curve)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_CurveSerial)->Unit(benchmark::kMillisecond)->UseRealTime();

BENCHMARK_MAIN();
