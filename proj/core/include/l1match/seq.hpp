#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

namespace l1match {

using Symbol = std::int64_t;

// Non-negative integer string with a declared upper bound M >= 1 on every
// entry.  M is a bound, not necessarily attained.
struct IntSequence {
  std::vector<Symbol> data;
  Symbol max_value = 1;

  IntSequence() = default;
  IntSequence(std::vector<Symbol> values, Symbol bound);

  std::size_t size() const { return data.size(); }
  Symbol operator[](std::size_t i) const { return data[i]; }
};

// A symbol slot that is either a concrete value or a wildcard.  Wildcards
// contribute zero to every distance.
using MaybeSymbol = std::optional<Symbol>;

struct WildcardSequence {
  std::vector<MaybeSymbol> data;
  Symbol max_value = 1;

  WildcardSequence() = default;
  WildcardSequence(std::vector<MaybeSymbol> values, Symbol bound);

  std::size_t size() const { return data.size(); }
  const MaybeSymbol& operator[](std::size_t i) const { return data[i]; }
};

struct RleRun {
  MaybeSymbol symbol;
  std::int64_t length = 0;
};

struct RleSequence {
  std::vector<RleRun> runs;
  std::int64_t total_length = 0;
};

// A distance value: a non-negative integer or the dedicated infinity used by
// capped computations.  Infinity is its own state, never a magic integer.
class Distance {
 public:
  constexpr Distance() = default;

  static constexpr Distance finite(std::int64_t v) {
    Distance d;
    d.value_ = v;
    d.infinite_ = false;
    return d;
  }
  static constexpr Distance infinity() {
    Distance d;
    d.infinite_ = true;
    return d;
  }

  constexpr bool is_infinite() const { return infinite_; }
  std::int64_t value() const {
    if (infinite_) throw std::logic_error("value() on infinite distance");
    return value_;
  }

  friend constexpr bool operator==(const Distance& a, const Distance& b) {
    if (a.infinite_ != b.infinite_) return false;
    return a.infinite_ || a.value_ == b.value_;
  }
  friend constexpr bool operator!=(const Distance& a, const Distance& b) {
    return !(a == b);
  }

 private:
  std::int64_t value_ = 0;
  bool infinite_ = false;
};

// Alignment convention: entry i scores the pattern against the text window
// starting at text position i (0-based); length is n - m + 1.
using DistanceArray = std::vector<Distance>;

// Signed per-alignment scores (estimators may go negative before clamping).
using ScoreArray = std::vector<std::int64_t>;

// Shifts raw signed input by N = max(0, -min(raw)) into [0, M].  Errors on
// empty input.  The recorded bound is max(1, max entry).
IntSequence normalize(std::span<const std::int64_t> raw);

// Joint normalization for a text/pattern pair: one common shift N so that
// pairwise differences are preserved, one common bound M.  Returns
// {text, pattern, N}.
struct NormalizedPair {
  IntSequence text;
  IntSequence pattern;
  std::int64_t shift = 0;
};
NormalizedPair normalize_pair(std::span<const std::int64_t> raw_text,
                              std::span<const std::int64_t> raw_pattern);

// Maximal-run run-length coding.  decode(encode(s)) == s; encode yields runs
// in which adjacent runs never share a symbol and lengths are >= 1.
RleSequence rle_encode(const WildcardSequence& s);
WildcardSequence rle_decode(const RleSequence& s);

WildcardSequence to_wildcard(const IntSequence& s);

// Deterministic instance generator.  When `period` is set the output is
// periodic with that period except for exactly `corruption_count` positions
// overwritten with fresh symbols (so the period survives as an approximate
// one: the self-overlap Hamming distance at `period` is at most
// 2 * corruption_count).  Errors when period > length or period == 0, or when
// corruption_count > length, or alphabet_size < 1.
IntSequence generate(std::size_t length, Symbol alphabet_size,
                     std::optional<std::size_t> period,
                     std::size_t corruption_count, std::uint64_t seed);

// Entrywise cap: values > k become infinity; infinities stay infinite.
DistanceArray cap(const DistanceArray& d, std::int64_t k);

}  // namespace l1match
