#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cstdint>

#include "l1match/oracle.hpp"
#include "l1match/rng.hpp"
#include "l1match/seq.hpp"

using namespace l1match;

namespace {

WildcardSequence random_wildcard(Rng& rng, std::size_t length, Symbol alphabet,
                                 double wildcard_rate) {
  WildcardSequence s;
  s.max_value = std::max<Symbol>(alphabet - 1, 1);
  s.data.resize(length);
  for (std::size_t i = 0; i < length; ++i)
    if (rng.unit() >= wildcard_rate)
      s.data[i] = static_cast<Symbol>(rng.below(static_cast<std::uint64_t>(alphabet)));
  return s;
}

}  // namespace

TEST_CASE("normalize keeps non-negative input and records the bound") {
  const IntSequence s = normalize(std::vector<std::int64_t>{3, 1, 2});
  CHECK(s.data == std::vector<Symbol>{3, 1, 2});
  CHECK(s.max_value == 3);
}

TEST_CASE("normalize shifts negative input by the minimum") {
  const IntSequence s = normalize(std::vector<std::int64_t>{-2, 0, 5});
  CHECK(s.data == std::vector<Symbol>{0, 2, 7});
  CHECK(s.max_value == 7);
}

TEST_CASE("normalize rejects empty input") {
  CHECK_THROWS_WITH(normalize(std::vector<std::int64_t>{}), "empty sequence");
}

TEST_CASE("normalize preserves pairwise absolute differences") {
  Rng rng(101);
  for (int trial = 0; trial < 1000; ++trial) {
    const std::size_t len = 2 + rng.below(30);
    std::vector<std::int64_t> raw(len);
    for (auto& v : raw) v = static_cast<std::int64_t>(rng.below(2001)) - 1000;
    const IntSequence s = normalize(raw);
    REQUIRE(s.size() == len);
    for (std::size_t i = 0; i < len; ++i) {
      CHECK(s.data[i] >= 0);
      CHECK(s.data[i] <= s.max_value);
      for (std::size_t j = i + 1; j < len; ++j)
        CHECK(std::abs(s.data[i] - s.data[j]) == std::abs(raw[i] - raw[j]));
    }
  }
}

TEST_CASE("normalize_pair applies one joint shift") {
  const NormalizedPair p = normalize_pair(std::vector<std::int64_t>{-3, 5},
                                          std::vector<std::int64_t>{0, -1});
  CHECK(p.shift == 3);
  CHECK(p.text.data == std::vector<Symbol>{0, 8});
  CHECK(p.pattern.data == std::vector<Symbol>{3, 2});
  CHECK(p.text.max_value == p.pattern.max_value);
  CHECK(p.text.max_value == 8);
}

TEST_CASE("sequence invariants are enforced") {
  CHECK_THROWS(IntSequence(std::vector<Symbol>{}, 3));
  CHECK_THROWS(IntSequence(std::vector<Symbol>{0, 4}, 3));
  CHECK_THROWS(IntSequence(std::vector<Symbol>{-1}, 3));
  CHECK_THROWS(IntSequence(std::vector<Symbol>{0}, 0));
  CHECK_NOTHROW(IntSequence(std::vector<Symbol>{0, 3}, 3));
}

TEST_CASE("rle encodes maximal runs") {
  WildcardSequence s;
  s.max_value = 2;
  s.data = {Symbol{0}, Symbol{0}, Symbol{1}, Symbol{1}, Symbol{1}};
  const RleSequence r = rle_encode(s);
  REQUIRE(r.runs.size() == 2);
  CHECK(r.runs[0].symbol == MaybeSymbol{0});
  CHECK(r.runs[0].length == 2);
  CHECK(r.runs[1].symbol == MaybeSymbol{1});
  CHECK(r.runs[1].length == 3);
  CHECK(r.total_length == 5);
}

TEST_CASE("single repeated symbol collapses to one run") {
  WildcardSequence s;
  s.max_value = 1;
  s.data.assign(17, MaybeSymbol{1});
  CHECK(rle_encode(s).runs.size() == 1);
}

TEST_CASE("rle round-trips and produces maximal runs on random input") {
  Rng rng(202);
  for (int trial = 0; trial < 1000; ++trial) {
    const WildcardSequence s =
        random_wildcard(rng, 1 + rng.below(64), 1 + rng.below(4), 0.3);
    const RleSequence r = rle_encode(s);
    const WildcardSequence back = rle_decode(r);
    REQUIRE(back.size() == s.size());
    CHECK(back.data == s.data);
    std::int64_t total = 0;
    for (std::size_t i = 0; i < r.runs.size(); ++i) {
      CHECK(r.runs[i].length >= 1);
      total += r.runs[i].length;
      if (i > 0) CHECK(r.runs[i].symbol != r.runs[i - 1].symbol);
    }
    CHECK(total == r.total_length);
  }
}

TEST_CASE("generate honors a clean period") {
  const IntSequence s = generate(6, 2, std::size_t{2}, 0, 42);
  REQUIRE(s.size() == 6);
  for (std::size_t i = 0; i + 2 < s.size(); ++i) CHECK(s.data[i] == s.data[i + 2]);
}

TEST_CASE("generate is deterministic for a fixed seed") {
  const IntSequence a = generate(64, 5, std::size_t{7}, 9, 2024);
  const IntSequence b = generate(64, 5, std::size_t{7}, 9, 2024);
  CHECK(a.data == b.data);
  const IntSequence c = generate(64, 5, std::size_t{7}, 9, 2025);
  CHECK(a.data != c.data);
}

TEST_CASE("corruptions keep the period as an approximate one") {
  Rng rng(303);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t len = 32 + rng.below(64);
    const std::size_t period = 1 + rng.below(8);
    const std::size_t corruption = rng.below(8);
    const IntSequence s = generate(len, 6, period, corruption, rng.u64());
    std::size_t mismatches = 0;
    for (std::size_t i = 0; i + period < len; ++i)
      mismatches += s.data[i] != s.data[i + period];
    CHECK(mismatches <= 2 * corruption);
  }
}

TEST_CASE("generate rejects bad parameters") {
  CHECK_THROWS(generate(4, 2, std::size_t{5}, 0, 1));
  CHECK_THROWS(generate(4, 2, std::size_t{0}, 0, 1));
  CHECK_THROWS(generate(4, 0, std::nullopt, 0, 1));
  CHECK_THROWS(generate(4, 2, std::nullopt, 5, 1));
}

TEST_CASE("L1 dominates Hamming on random pairs") {
  Rng rng(404);
  for (int trial = 0; trial < 200; ++trial) {
    const IntSequence text = generate(40, 6, std::nullopt, 0, rng.u64());
    const IntSequence pattern = generate(8, 6, std::nullopt, 0, rng.u64());
    const DistanceArray l1 = oracle::naive_l1(text, pattern);
    const DistanceArray ham = oracle::naive_ham(text, pattern);
    for (std::size_t i = 0; i < l1.size(); ++i)
      CHECK(l1[i].value() >= ham[i].value());
  }
}

TEST_CASE("distance infinity is a dedicated state") {
  const Distance inf = Distance::infinity();
  CHECK(inf.is_infinite());
  CHECK_THROWS(inf.value());
  CHECK(inf == Distance::infinity());
  CHECK(inf != Distance::finite(0));
  CHECK(Distance::finite(3) == Distance::finite(3));
  CHECK(Distance::finite(3) != Distance::finite(4));
}

TEST_CASE("cap sends large entries to infinity and is idempotent") {
  const DistanceArray s{Distance::finite(2), Distance::finite(1),
                        Distance::finite(3)};
  const DistanceArray c = cap(s, 2);
  CHECK(c[0] == Distance::finite(2));
  CHECK(c[1] == Distance::finite(1));
  CHECK(c[2].is_infinite());
  CHECK(cap(c, 2) == c);
  const DistanceArray zero = cap(s, 0);
  for (const Distance& d : zero) CHECK(d.is_infinite());
}

TEST_CASE("to_wildcard carries symbols over verbatim") {
  const IntSequence s(std::vector<Symbol>{0, 2, 1}, 2);
  const WildcardSequence w = to_wildcard(s);
  REQUIRE(w.size() == 3);
  for (std::size_t i = 0; i < 3; ++i) {
    REQUIRE(w.data[i].has_value());
    CHECK(*w.data[i] == s.data[i]);
  }
}
