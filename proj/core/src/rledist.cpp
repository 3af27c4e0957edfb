#include "l1match/rledist.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "l1match/convolve.hpp"
#include "l1match/counters.hpp"

namespace l1match {

namespace {

struct Block {
  Symbol symbol;
  std::size_t begin;  // first position
  std::size_t end;    // last position, inclusive
};

std::vector<Block> nonwild_blocks(const RleSequence& s) {
  std::vector<Block> blocks;
  std::size_t pos = 0;
  for (const RleRun& run : s.runs) {
    if (run.symbol.has_value())
      blocks.push_back({*run.symbol, pos,
                        pos + static_cast<std::size_t>(run.length) - 1});
    pos += static_cast<std::size_t>(run.length);
  }
  if (pos != static_cast<std::size_t>(s.total_length))
    throw std::invalid_argument("run lengths disagree with total length");
  return blocks;
}

WildcardSequence checked_decode(const RleSequence& s) {
  WildcardSequence decoded = rle_decode(s);
  if (decoded.size() != static_cast<std::size_t>(s.total_length))
    throw std::invalid_argument("run lengths disagree with total length");
  return decoded;
}

// Anchor values: L1 weight for the l1 profile, match count for the Hamming
// profile (the block-pair scheme accumulates matches there, not mismatches).
std::int64_t window_anchor(const WildcardSequence& text,
                           const WildcardSequence& pattern,
                           std::size_t alignment, bool l1) {
  std::int64_t sum = 0;
  for (std::size_t j = 0; j < pattern.size(); ++j) {
    const MaybeSymbol& t = text.data[alignment + j];
    const MaybeSymbol& p = pattern.data[j];
    if (!t.has_value() || !p.has_value()) continue;
    sum += l1 ? std::abs(*t - *p) : (*t == *p ? 1 : 0);
  }
  return sum;
}

// One trapezoid of weight w for text block [u,v] x pattern block [y,z]:
// four impulses on the alignment axis at u-z, v-z+1, u-y+1, v-y+2.
// Impulses left of alignment 2 are absorbed by the exact anchors; impulses
// beyond the last alignment only affect windows that do not exist.
inline void add_block_pair(std::vector<std::int64_t>& d2, std::size_t len,
                           const Block& text_block, const Block& pattern_block,
                           std::int64_t w) {
  const std::int64_t u = static_cast<std::int64_t>(text_block.begin);
  const std::int64_t v = static_cast<std::int64_t>(text_block.end);
  const std::int64_t y = static_cast<std::int64_t>(pattern_block.begin);
  const std::int64_t z = static_cast<std::int64_t>(pattern_block.end);
  const auto bump = [&](std::int64_t idx, std::int64_t delta) {
    if (idx >= 2 && idx < static_cast<std::int64_t>(len))
      d2[static_cast<std::size_t>(idx - 2)] += delta;
  };
  bump(u - z, w);
  bump(v - z + 1, -w);
  bump(u - y + 1, -w);
  bump(v - y + 2, w);
}

DistanceArray rle_distance(const RleSequence& text, const RleSequence& pattern,
                           bool l1) {
  const WildcardSequence t = checked_decode(text);
  const WildcardSequence p = checked_decode(pattern);
  const std::size_t n = t.size(), m = p.size();
  if (m > n) throw std::invalid_argument("pattern longer than text");
  const std::size_t len = n - m + 1;

  SecondDerivative acc;
  acc.length = len;
  acc.d2.assign(len >= 2 ? len - 2 : 0, 0);
  acc.s0 = window_anchor(t, p, 0, l1);
  if (len >= 2) acc.s1 = window_anchor(t, p, 1, l1);

  std::vector<Block> tb = nonwild_blocks(text);
  std::vector<Block> pb = nonwild_blocks(pattern);
  std::size_t pairs = 0;
  if (l1) {
    // L1 is the sum over overlapping block pairs of |a-b| times the overlap
    // length, so every unequal-symbol pair contributes one |a-b|-weighted
    // trapezoid; equal symbols contribute nothing.
    for (const Block& a : tb)
      for (const Block& b : pb) {
        if (a.symbol == b.symbol) continue;
        add_block_pair(acc.d2, len, a, b, std::abs(a.symbol - b.symbol));
        ++pairs;
      }
  } else {
    // Hamming: count matches via same-symbol pairs, then subtract from the
    // number of aligned non-wildcard pairs (one binary correlation).
    std::sort(tb.begin(), tb.end(),
              [](const Block& a, const Block& b) { return a.symbol < b.symbol; });
    std::sort(pb.begin(), pb.end(),
              [](const Block& a, const Block& b) { return a.symbol < b.symbol; });
    std::size_t i = 0, j = 0;
    while (i < tb.size() && j < pb.size()) {
      if (tb[i].symbol < pb[j].symbol) {
        ++i;
      } else if (pb[j].symbol < tb[i].symbol) {
        ++j;
      } else {
        std::size_t j_end = j;
        while (j_end < pb.size() && pb[j_end].symbol == tb[i].symbol) ++j_end;
        for (; i < tb.size() && tb[i].symbol == pb[j].symbol; ++i)
          for (std::size_t q = j; q < j_end; ++q) {
            add_block_pair(acc.d2, len, tb[i], pb[q], 1);
            ++pairs;
          }
        j = j_end;
      }
    }
  }
  counters().block_pairs.fetch_add(pairs, std::memory_order_relaxed);

  if (!l1) {
    // acc currently integrates to matches[]; convert to mismatches.
    std::vector<std::int64_t> ind_t(n), ind_p(m);
    for (std::size_t x = 0; x < n; ++x) ind_t[x] = t.data[x].has_value();
    for (std::size_t x = 0; x < m; ++x) ind_p[x] = p.data[x].has_value();
    const ScoreArray aligned = correlate(ind_t, ind_p);
    const DistanceArray matches = integrate(acc);
    DistanceArray out;
    out.reserve(len);
    for (std::size_t i = 0; i < len; ++i)
      out.push_back(Distance::finite(aligned[i] - matches[i].value()));
    return out;
  }
  return integrate(acc);
}

}  // namespace

SecondDerivative differentiate(std::span<const std::int64_t> values) {
  if (values.empty()) throw std::invalid_argument("empty sequence");
  SecondDerivative d;
  d.length = values.size();
  d.s0 = values[0];
  d.s1 = values.size() >= 2 ? values[1] : 0;
  if (values.size() >= 2) d.d2.resize(values.size() - 2);
  for (std::size_t i = 0; i + 2 < values.size(); ++i)
    d.d2[i] = values[i + 2] - 2 * values[i + 1] + values[i];
  return d;
}

DistanceArray integrate(const SecondDerivative& d) {
  if (d.length == 0) throw std::invalid_argument("empty sequence");
  std::vector<std::int64_t> s(d.length);
  s[0] = d.s0;
  if (d.length >= 2) s[1] = d.s1;
  for (std::size_t i = 2; i < d.length; ++i)
    s[i] = 2 * s[i - 1] - s[i - 2] + d.d2[i - 2];
  DistanceArray out;
  out.reserve(d.length);
  for (std::int64_t v : s) {
    if (v < 0) throw std::invalid_argument("integration produced a negative value");
    out.push_back(Distance::finite(v));
  }
  return out;
}

DistanceArray rle_ham(const RleSequence& text, const RleSequence& pattern) {
  return rle_distance(text, pattern, false);
}

DistanceArray rle_l1(const RleSequence& text, const RleSequence& pattern) {
  return rle_distance(text, pattern, true);
}

EliminatedPair eliminate_wildcards(const WildcardSequence& text,
                                   const WildcardSequence& pattern) {
  const auto values = [](const WildcardSequence& s) {
    std::vector<Symbol> v(s.size());
    Symbol hi = 1;
    for (std::size_t i = 0; i < s.size(); ++i) {
      if (s.data[i].has_value()) {
        if (*s.data[i] < 1)
          throw std::invalid_argument("wildcard elimination needs symbols >= 1");
        v[i] = *s.data[i];
        hi = std::max(hi, v[i]);
      }
    }
    return IntSequence(std::move(v), hi);
  };
  const auto indicator = [](const WildcardSequence& s) {
    std::vector<Symbol> v(s.size());
    for (std::size_t i = 0; i < s.size(); ++i) v[i] = s.data[i].has_value();
    return IntSequence(std::move(v), 1);
  };
  return EliminatedPair{values(text), values(pattern), indicator(text),
                        indicator(pattern)};
}

DistanceArray sparse_to_capped(const WildcardSequence& text,
                               const WildcardSequence& pattern, std::int64_t k,
                               const CappedHamBackend& backend) {
  if (k < 0) throw std::invalid_argument("k must be >= 0");
  const auto nonwild = [](const WildcardSequence& s) {
    std::size_t c = 0;
    for (const MaybeSymbol& v : s.data) c += v.has_value();
    return c;
  };
  if (nonwild(text) > static_cast<std::size_t>(k) ||
      nonwild(pattern) > static_cast<std::size_t>(k))
    throw std::invalid_argument("sparsity bound violated");
  if (pattern.size() > text.size())
    throw std::invalid_argument("pattern longer than text");

  const EliminatedPair parts = eliminate_wildcards(text, pattern);
  const DistanceArray d1 =
      backend(parts.values_text, parts.values_pattern, 2 * k);
  const DistanceArray d2 =
      backend(parts.indicator_text, parts.indicator_pattern, 2 * k);
  DistanceArray out;
  out.reserve(d1.size());
  for (std::size_t i = 0; i < d1.size(); ++i) {
    if (d1[i].is_infinite() || d2[i].is_infinite())
      throw std::logic_error("capped backend exceeded the sparsity budget");
    out.push_back(Distance::finite(d1[i].value() - d2[i].value()));
  }
  return out;
}

}  // namespace l1match
