#include <benchmark/benchmark.h>

#include <cstdint>
#include <optional>

#include "l1match/convolve.hpp"
#include "l1match/hamapprox.hpp"
#include "l1match/kangaroo.hpp"
#include "l1match/kernel.hpp"
#include "l1match/l1approx.hpp"
#include "l1match/oracle.hpp"
#include "l1match/rledist.hpp"
#include "l1match/rng.hpp"
#include "l1match/seq.hpp"

namespace {

using namespace l1match;

void bm_correlate(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const std::size_t m = n / 8;
  const IntSequence a = generate(n, 1000, std::nullopt, 0, 1);
  const IntSequence b = generate(m, 1000, std::nullopt, 0, 2);
  for (auto _ : state)
    benchmark::DoNotOptimize(correlate(a.data, b.data));
  state.SetComplexityN(static_cast<std::int64_t>(n));
}
BENCHMARK(bm_correlate)->Range(1 << 10, 1 << 16)->Complexity();

void bm_weighted_mismatches(benchmark::State& state) {
  const std::size_t n = 4096, m = 512;
  const auto domain = static_cast<Symbol>(state.range(0));
  const IntSequence text = generate(n, domain, std::nullopt, 0, 3);
  const IntSequence pattern = generate(m, domain, std::nullopt, 0, 4);
  const WeightFunction weight = WeightFunction::abs_diff(domain);
  for (auto _ : state)
    benchmark::DoNotOptimize(weighted_mismatches(text, pattern, weight));
}
BENCHMARK(bm_weighted_mismatches)->Arg(4)->Arg(64)->Arg(1024);

void bm_approximate(benchmark::State& state) {
  const std::size_t n = 4096, m = 512;
  const Symbol max_value = Symbol{1} << 20;
  const double epsilon = 1.0 / static_cast<double>(state.range(0));
  const IntSequence text = generate(n, max_value + 1, std::nullopt, 0, 5);
  const IntSequence pattern = generate(m, max_value + 1, std::nullopt, 0, 6);
  ApproxParams params = ApproxParams::from_epsilon(epsilon, max_value, n);
  params.repetitions = 1;  // per-run cost; the full estimator scales linearly
  Rng rng(7);
  for (auto _ : state)
    benchmark::DoNotOptimize(approximate(text, pattern, params, rng));
}
BENCHMARK(bm_approximate)->Arg(2)->Arg(4)->Arg(10);

void bm_ham_binary(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const IntSequence text = generate(n, 2, std::nullopt, 0, 8);
  const IntSequence pattern = generate(n / 8, 2, std::nullopt, 0, 9);
  for (auto _ : state)
    benchmark::DoNotOptimize(ham_binary(text.data, pattern.data));
}
BENCHMARK(bm_ham_binary)->Range(1 << 12, 1 << 16);

void bm_rle_l1(benchmark::State& state) {
  // Long-run inputs: the RLE path depends on run counts, not raw length.
  const auto runs = static_cast<std::size_t>(state.range(0));
  Rng rng(10);
  std::vector<MaybeSymbol> text, pattern;
  for (std::size_t r = 0; r < runs; ++r) {
    const std::size_t len = 1 + rng.below(32);
    const Symbol sym = static_cast<Symbol>(rng.below(16));
    text.insert(text.end(), len, MaybeSymbol{sym});
  }
  for (std::size_t r = 0; r < runs / 2; ++r) {
    const std::size_t len = 1 + rng.below(16);
    const Symbol sym = static_cast<Symbol>(rng.below(16));
    pattern.insert(pattern.end(), len, MaybeSymbol{sym});
  }
  if (pattern.size() > text.size()) pattern.resize(text.size());
  const RleSequence rt = rle_encode(WildcardSequence(std::move(text), 15));
  const RleSequence rp = rle_encode(WildcardSequence(std::move(pattern), 15));
  for (auto _ : state)
    benchmark::DoNotOptimize(rle_l1(rt, rp));
}
BENCHMARK(bm_rle_l1)->Arg(64)->Arg(256)->Arg(1024);

void bm_verify_alignment(benchmark::State& state) {
  const std::size_t n = 4096, m = 256;
  const auto k = static_cast<std::int64_t>(state.range(0));
  const IntSequence text = generate(n, 4, 3, 200, 11);
  const IntSequence pattern = generate(m, 4, 3, 20, 12);
  const LcpIndex index = build_lcp(text, pattern);
  for (auto _ : state) {
    for (std::size_t a = 0; a + m <= n; a += 17)
      benchmark::DoNotOptimize(
          verify_alignment(index, text, pattern, a, k, oracle::Metric::kL1));
  }
}
BENCHMARK(bm_verify_alignment)->Arg(1)->Arg(16)->Arg(256);

void bm_kapprox(benchmark::State& state) {
  const std::size_t n = 2048, m = 256;
  const auto k = static_cast<std::int64_t>(state.range(0));
  const IntSequence pattern = generate(m, 8, 4, 1, 13);
  Rng make(14);
  std::vector<Symbol> data(n);
  for (std::size_t i = 0; i < n; ++i) data[i] = pattern.data[i % m];
  for (int c = 0; c < 16; ++c)
    data[make.below(n)] = static_cast<Symbol>(make.below(8));
  const IntSequence text(std::move(data), pattern.max_value);
  for (auto _ : state) {
    Rng rng(15);
    benchmark::DoNotOptimize(kapprox_l1(text, pattern, k, rng));
  }
}
BENCHMARK(bm_kapprox)->Arg(8)->Arg(32);

}  // namespace

BENCHMARK_MAIN();
