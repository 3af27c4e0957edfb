#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdint>
#include <optional>
#include <vector>

#include "l1match/counters.hpp"
#include "l1match/oracle.hpp"
#include "l1match/rledist.hpp"
#include "l1match/rng.hpp"
#include "l1match/seq.hpp"

using namespace l1match;

namespace {

WildcardSequence wild_from(const std::vector<int>& v, Symbol bound,
                           int wildcard_marker = -1) {
  std::vector<MaybeSymbol> data;
  data.reserve(v.size());
  for (int x : v)
    data.push_back(x == wildcard_marker ? MaybeSymbol{}
                                        : MaybeSymbol{static_cast<Symbol>(x)});
  return WildcardSequence(std::move(data), bound);
}

WildcardSequence random_wild(Rng& rng, std::size_t len, Symbol alphabet,
                             std::uint64_t wild_percent) {
  std::vector<MaybeSymbol> data(len);
  for (auto& s : data)
    s = rng.below(100) < wild_percent
            ? MaybeSymbol{}
            : MaybeSymbol{static_cast<Symbol>(rng.below(
                  static_cast<std::uint64_t>(alphabet)))};
  return WildcardSequence(std::move(data), alphabet - 1);
}

std::vector<std::int64_t> values_of(const DistanceArray& d) {
  std::vector<std::int64_t> out;
  out.reserve(d.size());
  for (const Distance& v : d) out.push_back(v.value());
  return out;
}

}  // namespace

TEST_CASE("differencing round-trips random profiles") {
  Rng rng(107);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t len = 1 + rng.below(40);
    std::vector<std::int64_t> s(len);
    for (auto& v : s) v = static_cast<std::int64_t>(rng.below(1000));
    const SecondDerivative d = differentiate(s);
    CHECK(d.length == len);
    const DistanceArray back = integrate(d);
    CHECK(values_of(back) == s);
  }
}

TEST_CASE("differencing pins the anchor layout") {
  const std::vector<std::int64_t> s{7, 4, 9, 9, 2};
  const SecondDerivative d = differentiate(s);
  CHECK(d.s0 == 7);
  CHECK(d.s1 == 4);
  REQUIRE(d.d2.size() == 3);
  CHECK(d.d2[0] == 9 - 2 * 4 + 7);
  CHECK(d.d2[1] == 9 - 2 * 9 + 4);
  CHECK(d.d2[2] == 2 - 2 * 9 + 9);
}

TEST_CASE("run-length Hamming on a six-letter example") {
  // text aaabbb, pattern ab: window mismatches are 1,1,0,1,1.
  const RleSequence text = rle_encode(wild_from({0, 0, 0, 1, 1, 1}, 1));
  const RleSequence pattern = rle_encode(wild_from({0, 1}, 1));
  const DistanceArray got = rle_ham(text, pattern);
  CHECK(values_of(got) == std::vector<std::int64_t>{1, 1, 0, 1, 1});
}

TEST_CASE("run-length L1 on a two-run example") {
  // text 1144, pattern 23: |1-2|+|1-3| = 3, |1-2|+|4-3| = 2, |4-2|+|4-3| = 3.
  const RleSequence text = rle_encode(wild_from({1, 1, 4, 4}, 4));
  const RleSequence pattern = rle_encode(wild_from({2, 3}, 4));
  const DistanceArray got = rle_l1(text, pattern);
  CHECK(values_of(got) == std::vector<std::int64_t>{3, 2, 3});
}

TEST_CASE("single-symbol pattern against alternating text") {
  const RleSequence text = rle_encode(wild_from({1, 0, 0, 1}, 1));
  const RleSequence pattern = rle_encode(wild_from({0}, 1));
  CHECK(values_of(rle_ham(text, pattern)) ==
        std::vector<std::int64_t>{1, 0, 0, 1});
  CHECK(values_of(rle_l1(text, pattern)) ==
        std::vector<std::int64_t>{1, 0, 0, 1});
}

TEST_CASE("wildcards are free in both metrics") {
  const RleSequence text = rle_encode(wild_from({-1, 4}, 7));
  const RleSequence pattern = rle_encode(wild_from({7}, 7));
  CHECK(values_of(rle_l1(text, pattern)) == std::vector<std::int64_t>{0, 3});
  CHECK(values_of(rle_ham(text, pattern)) == std::vector<std::int64_t>{0, 1});
}

TEST_CASE("run-length distances match the wildcard oracle") {
  Rng rng(109);
  for (int trial = 0; trial < 400; ++trial) {
    const Symbol alphabet = 2 + static_cast<Symbol>(rng.below(4));
    const std::size_t n = 1 + rng.below(96);
    const std::size_t m = 1 + rng.below(n);
    const WildcardSequence t = random_wild(rng, n, alphabet, 25);
    const WildcardSequence p = random_wild(rng, m, alphabet, 25);
    const DistanceArray want_ham = oracle::naive_wild(t, p, oracle::Metric::kHamming);
    const DistanceArray want_l1 = oracle::naive_wild(t, p, oracle::Metric::kL1);
    CHECK(rle_ham(rle_encode(t), rle_encode(p)) == want_ham);
    CHECK(rle_l1(rle_encode(t), rle_encode(p)) == want_l1);
  }
}

TEST_CASE("long runs exercise the block-pair accounting") {
  // Few runs, long lengths: the trapezoid updates must integrate exactly.
  Rng rng(113);
  for (int trial = 0; trial < 40; ++trial) {
    std::vector<MaybeSymbol> tv, pv;
    const Symbol alphabet = 3;
    while (tv.size() < 240) {
      const std::size_t run = 1 + rng.below(60);
      const MaybeSymbol s =
          rng.below(5) == 0 ? MaybeSymbol{}
                            : MaybeSymbol{static_cast<Symbol>(rng.below(3))};
      for (std::size_t i = 0; i < run && tv.size() < 240; ++i) tv.push_back(s);
    }
    while (pv.size() < 50) {
      const std::size_t run = 1 + rng.below(25);
      const MaybeSymbol s =
          rng.below(5) == 0 ? MaybeSymbol{}
                            : MaybeSymbol{static_cast<Symbol>(rng.below(3))};
      for (std::size_t i = 0; i < run && pv.size() < 50; ++i) pv.push_back(s);
    }
    const WildcardSequence t(tv, alphabet - 1), p(pv, alphabet - 1);
    CHECK(rle_ham(rle_encode(t), rle_encode(p)) ==
          oracle::naive_wild(t, p, oracle::Metric::kHamming));
    CHECK(rle_l1(rle_encode(t), rle_encode(p)) ==
          oracle::naive_wild(t, p, oracle::Metric::kL1));
  }
}

TEST_CASE("block pair work is counted") {
  const RleSequence text = rle_encode(wild_from({0, 0, 1, 1, 2, 2}, 2));
  const RleSequence pattern = rle_encode(wild_from({1, 1}, 2));
  counters().reset();
  rle_ham(text, pattern);
  CHECK(snapshot_counters().block_pairs > 0);
}

TEST_CASE("wildcard elimination is exact") {
  Rng rng(127);
  for (int trial = 0; trial < 200; ++trial) {
    const Symbol alphabet = 2 + static_cast<Symbol>(rng.below(5));
    const std::size_t n = 1 + rng.below(60);
    const std::size_t m = 1 + rng.below(n);
    // Symbols must be >= 1 so zero can stand in for eliminated wildcards.
    WildcardSequence t = random_wild(rng, n, alphabet, 30);
    WildcardSequence p = random_wild(rng, m, alphabet, 30);
    for (auto& s : t.data)
      if (s) s = *s + 1;
    for (auto& s : p.data)
      if (s) s = *s + 1;
    t.max_value = alphabet;
    p.max_value = alphabet;

    const EliminatedPair e = eliminate_wildcards(t, p);
    const DistanceArray d1 = oracle::naive_ham(e.values_text, e.values_pattern);
    const DistanceArray d2 =
        oracle::naive_ham(e.indicator_text, e.indicator_pattern);
    const DistanceArray want = oracle::naive_wild(t, p, oracle::Metric::kHamming);
    REQUIRE(d1.size() == want.size());
    for (std::size_t i = 0; i < want.size(); ++i)
      CHECK(d1[i].value() - d2[i].value() == want[i].value());
  }
}

TEST_CASE("wildcard elimination rejects zero symbols") {
  const WildcardSequence t = wild_from({0, -1}, 3);
  const WildcardSequence p = wild_from({1}, 3);
  CHECK_THROWS(eliminate_wildcards(t, p));
}

TEST_CASE("sparse instances route through a capped backend") {
  Rng rng(131);
  std::int64_t seen_cap = -1;
  std::size_t calls = 0;
  const CappedHamBackend backend = [&](const IntSequence& t,
                                       const IntSequence& p, std::int64_t c) {
    seen_cap = c;
    ++calls;
    return cap(oracle::naive_ham(t, p), c);
  };
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 8 + rng.below(60);
    const std::size_t m = 1 + rng.below(n);
    const std::int64_t k = 1 + static_cast<std::int64_t>(rng.below(6));
    // At most k concrete symbols per side, values >= 1.
    std::vector<MaybeSymbol> tv(n), pv(m);
    for (std::int64_t placed = 0; placed < k; ++placed) {
      tv[rng.below(n)] = static_cast<Symbol>(1 + rng.below(4));
      pv[rng.below(m)] = static_cast<Symbol>(1 + rng.below(4));
    }
    const WildcardSequence t(tv, 4), p(pv, 4);
    const DistanceArray got = sparse_to_capped(t, p, k, backend);
    CHECK(got == oracle::naive_wild(t, p, oracle::Metric::kHamming));
    CHECK(seen_cap == 2 * k);
  }
  CHECK(calls == 200);  // two eliminated instances per call
}

TEST_CASE("sparse budget violations are rejected") {
  const WildcardSequence t = wild_from({1, 1, 1, -1}, 2);
  const WildcardSequence p = wild_from({2, -1}, 2);
  const CappedHamBackend backend = [](const IntSequence& a, const IntSequence& b,
                                      std::int64_t c) {
    return cap(oracle::naive_ham(a, b), c);
  };
  CHECK_THROWS(sparse_to_capped(t, p, 2, backend));  // text has 3 symbols
  CHECK_NOTHROW(sparse_to_capped(t, p, 3, backend));
}
