#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cstdint>
#include <vector>

#include "l1match/kernel.hpp"
#include "l1match/oracle.hpp"
#include "l1match/rledist.hpp"
#include "l1match/rng.hpp"
#include "l1match/seq.hpp"

using namespace l1match;

namespace {

IntSequence periodic_pattern(std::size_t m, std::size_t period, Symbol alphabet,
                             std::size_t corruption, std::uint64_t seed) {
  return generate(m, alphabet, period, corruption, seed);
}

// Text built by tiling the pattern cyclically and corrupting a few spots, so
// many alignments stay within a small distance of the pattern.
IntSequence tile_with_noise(const IntSequence& pattern, std::size_t n,
                            std::size_t corruptions, Rng& rng) {
  std::vector<Symbol> data(n);
  for (std::size_t i = 0; i < n; ++i) data[i] = pattern.data[i % pattern.size()];
  for (std::size_t c = 0; c < corruptions; ++c)
    data[rng.below(n)] = static_cast<Symbol>(
        rng.below(static_cast<std::uint64_t>(pattern.max_value) + 1));
  return IntSequence(std::move(data), pattern.max_value);
}

}  // namespace

TEST_CASE("period probe accepts a planted period and rejects noise") {
  Rng rng(137);
  for (int trial = 0; trial < 10; ++trial) {
    const IntSequence periodic =
        periodic_pattern(48, 4, 8, 2, 1000 + static_cast<std::uint64_t>(trial));
    Rng r1 = rng.derive(static_cast<std::uint64_t>(trial));
    const PeriodReport on_periodic = classify_period(periodic, 4, r1);
    CHECK(on_periodic.period_case == PeriodReport::Case::kSmallPeriod);
    CHECK(on_periodic.period == 4);
    CHECK(on_periodic.estimates.size() == 4);  // shifts 1..min(k, m-1)

    const IntSequence noisy =
        generate(48, 64, std::nullopt, 0, 2000 + static_cast<std::uint64_t>(trial));
    Rng r2 = rng.derive(100 + static_cast<std::uint64_t>(trial));
    const PeriodReport on_noise = classify_period(noisy, 3, r2);
    CHECK(on_noise.period_case == PeriodReport::Case::kNoSmallPeriod);
    CHECK(on_noise.period == 0);
  }
}

TEST_CASE("period probe validates k and degenerate patterns") {
  Rng rng(1);
  const IntSequence p = generate(8, 3, std::nullopt, 0, 5);
  CHECK_THROWS(classify_period(p, 0, rng));
  const PeriodReport single = classify_period(IntSequence({2}, 3), 4, rng);
  CHECK(single.period_case == PeriodReport::Case::kNoSmallPeriod);
}

TEST_CASE("filtering keeps every alignment within distance k") {
  Rng rng(139);
  for (int trial = 0; trial < 40; ++trial) {
    const Symbol alphabet = 3;
    const std::size_t m = 24;
    const std::size_t n = 2 * m;
    const IntSequence chunk = generate(n, alphabet, std::nullopt, 0, rng.u64());
    const IntSequence pattern = generate(m, alphabet, std::nullopt, 0, rng.u64());
    const std::int64_t k = 8 + static_cast<std::int64_t>(rng.below(8));
    Rng filter_rng = rng.derive(static_cast<std::uint64_t>(trial));
    const std::vector<std::size_t> kept =
        filter_alignments(chunk, pattern, k, filter_rng);
    const DistanceArray truth = oracle::naive_ham(chunk, pattern);
    for (std::size_t i = 0; i < truth.size(); ++i) {
      if (truth[i].value() <= k)
        CHECK(std::find(kept.begin(), kept.end(), i) != kept.end());
    }
    // Everything kept is within 2k with high probability.
    for (std::size_t i : kept) CHECK(truth[i].value() <= 2 * k);
  }
}

TEST_CASE("filtering validates chunk geometry") {
  Rng rng(1);
  const IntSequence pattern = generate(8, 3, std::nullopt, 0, 1);
  const IntSequence narrow = generate(4, 3, std::nullopt, 0, 2);
  const IntSequence wide = generate(20, 3, std::nullopt, 0, 3);
  CHECK_THROWS(filter_alignments(narrow, pattern, 2, rng));
  CHECK_THROWS(filter_alignments(wide, pattern, 2, rng));
  CHECK_THROWS(filter_alignments(generate(10, 3, std::nullopt, 0, 4), pattern,
                                 -1, rng));
}

TEST_CASE("region extraction covers the candidate windows") {
  const IntSequence chunk = generate(40, 5, std::nullopt, 0, 17);
  const Region region = extract_region(chunk, {3, 5, 11}, 8);
  CHECK(region.offset == 3);
  CHECK(region.text.size() == 11 + 8 - 3);
  for (std::size_t i = 0; i < region.text.size(); ++i)
    CHECK(region.text.data[i] == chunk.data[3 + i]);
  CHECK_THROWS(extract_region(chunk, {}, 8));
  CHECK_THROWS(extract_region(chunk, {35}, 8));
}

TEST_CASE("kernelization preserves distances at every alignment") {
  Rng rng(149);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t period = 2 + rng.below(5);
    const std::size_t m = 8 * period + rng.below(12);
    const std::size_t u = m + rng.below(m - period + 1);
    const Symbol alphabet = 3;
    const std::int64_t k = static_cast<std::int64_t>(period) +
                           static_cast<std::int64_t>(rng.below(6));
    const IntSequence pattern =
        periodic_pattern(m, period, alphabet, 2, rng.u64());
    const IntSequence region = generate(u, alphabet, period, 4, rng.u64());

    const KernelInstance inst =
        kernelize(pattern, region, static_cast<std::int64_t>(period), k);
    REQUIRE(inst.candidate_set.size() == u - m + 1);
    CHECK(inst.p_star.size() <= 2 * m);
    CHECK(inst.t_star.size() <= 2 * (u + period));

    const DistanceArray ham =
        oracle::naive_wild(inst.t_star, inst.p_star, oracle::Metric::kHamming);
    const DistanceArray l1 =
        oracle::naive_wild(inst.t_star, inst.p_star, oracle::Metric::kL1);
    const WildcardSequence wt = to_wildcard(region);
    const WildcardSequence wp = to_wildcard(pattern);
    const DistanceArray want_ham =
        oracle::naive_wild(wt, wp, oracle::Metric::kHamming);
    const DistanceArray want_l1 = oracle::naive_wild(wt, wp, oracle::Metric::kL1);
    for (std::size_t a : inst.candidate_set) {
      CHECK(ham[inst.map(a)] == want_ham[a]);
      CHECK(l1[inst.map(a)] == want_l1[a]);
    }
  }
}

TEST_CASE("kernelization rejects invalid period and region") {
  const IntSequence pattern = generate(16, 3, std::size_t{4}, 0, 3);
  const IntSequence region = generate(20, 3, std::size_t{4}, 0, 4);
  CHECK_THROWS(kernelize(pattern, region, 0, 5));
  CHECK_THROWS(kernelize(pattern, region, 16, 20));
  CHECK_THROWS(kernelize(pattern, region, 4, 3));  // period exceeds k
  CHECK_THROWS(kernelize(pattern, generate(10, 3, std::nullopt, 0, 5), 4, 5));
}

TEST_CASE("pipeline output equals the capped oracle across families") {
  Rng rng(151);
  int kernel_regions = 0;
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t m = 16 + rng.below(17);
    const std::size_t n = m + 100 + rng.below(120);
    const int family = trial % 3;
    IntSequence text = generate(n, 4, std::nullopt, 0, rng.u64());
    IntSequence pattern = generate(m, 4, std::nullopt, 0, rng.u64());
    std::int64_t k = 1 + static_cast<std::int64_t>(rng.below(6));
    if (family == 1) {
      // Periodic pattern tiled across the text with scattered corruptions:
      // survivors abound and the kernel route engages.
      const std::size_t period = 2 + rng.below(3);
      pattern = periodic_pattern(m, period, 4, 1, rng.u64());
      text = tile_with_noise(pattern, n, 8, rng);
      k = static_cast<std::int64_t>(period + rng.below(3));
    } else if (family == 2) {
      // Plant a few pattern copies in noise.
      for (int c = 0; c < 3; ++c) {
        const std::size_t at = rng.below(n - m + 1);
        for (std::size_t j = 0; j < m; ++j) text.data[at + j] = pattern.data[j];
      }
    }
    const oracle::Metric metric =
        trial % 2 == 0 ? oracle::Metric::kL1 : oracle::Metric::kHamming;
    Rng run_rng(4000 + static_cast<std::uint64_t>(trial));
    PipelineTrace trace;
    const DistanceArray got =
        kapprox(text, pattern, k, metric, run_rng, {}, &trace);
    const DistanceArray want =
        metric == oracle::Metric::kL1 ? cap(oracle::naive_l1(text, pattern), k)
                                      : cap(oracle::naive_ham(text, pattern), k);
    CHECK(got == want);
    CHECK(trace.chunks == (n - m) / m + 1);
    for (const RegionOutcome& region : trace.regions)
      if (region.used_kernel) ++kernel_regions;
  }
  CHECK(kernel_regions > 0);  // the periodic family must hit the kernel route
}

TEST_CASE("k of zero reports exact occurrences only") {
  Rng rng(157);
  IntSequence text = generate(120, 3, std::nullopt, 0, 60);
  const IntSequence pattern = generate(10, 3, std::nullopt, 0, 61);
  for (std::size_t j = 0; j < pattern.size(); ++j)
    text.data[30 + j] = pattern.data[j];
  Rng run_rng(62);
  const DistanceArray got = kapprox_l1(text, pattern, 0, run_rng);
  CHECK(got == cap(oracle::naive_l1(text, pattern), 0));
  CHECK(got[30] == Distance::finite(0));
}

TEST_CASE("large k falls back to the exact computation") {
  Rng rng(163);
  const IntSequence text = generate(90, 5, std::nullopt, 0, 70);
  const IntSequence pattern = generate(12, 5, std::nullopt, 0, 71);
  PipelineTrace trace;
  const DistanceArray got =
      kapprox_l1(text, pattern, 12, rng, {}, &trace);
  CHECK(trace.exact_fallback);
  CHECK(got == cap(oracle::naive_l1(text, pattern), 12));
}

TEST_CASE("a custom backend serves the kernel route") {
  Rng rng(167);
  const std::size_t m = 32, n = 200;
  const IntSequence pattern = periodic_pattern(m, 4, 8, 1, 80);
  const IntSequence text = tile_with_noise(pattern, n, 6, rng);
  std::size_t backend_calls = 0;
  const RleBackend backend = [&](const RleSequence& t, const RleSequence& p) {
    ++backend_calls;
    return rle_l1(t, p);
  };
  PipelineTrace trace;
  trace.keep_instances = true;
  Rng run_rng(82);
  const DistanceArray got = kapprox_l1(text, pattern, 4, run_rng, backend, &trace);
  CHECK(got == cap(oracle::naive_l1(text, pattern), 4));
  std::size_t kernel_regions = 0;
  for (const RegionOutcome& region : trace.regions) {
    if (!region.used_kernel) continue;
    ++kernel_regions;
    REQUIRE(region.instance.has_value());
    CHECK(region.p_star_runs + region.t_star_runs <= 40u * 4u);
    CHECK(region.p_star_length <= 4 * m);
    CHECK(region.t_star_length <= 4 * m);
  }
  CHECK(kernel_regions > 0);
  CHECK(backend_calls == kernel_regions);
}
