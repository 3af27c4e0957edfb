#include "l1match/seq.hpp"

#include <algorithm>
#include <numeric>

#include "l1match/rng.hpp"

namespace l1match {

namespace {

Symbol checked_bound(Symbol bound) {
  if (bound < 1) throw std::invalid_argument("sequence bound must be >= 1");
  return bound;
}

}  // namespace

IntSequence::IntSequence(std::vector<Symbol> values, Symbol bound)
    : data(std::move(values)), max_value(checked_bound(bound)) {
  if (data.empty()) throw std::invalid_argument("empty sequence");
  for (Symbol v : data) {
    if (v < 0 || v > max_value)
      throw std::invalid_argument("sequence entry outside [0, M]");
  }
}

WildcardSequence::WildcardSequence(std::vector<MaybeSymbol> values,
                                   Symbol bound)
    : data(std::move(values)), max_value(checked_bound(bound)) {
  if (data.empty()) throw std::invalid_argument("empty sequence");
  for (const MaybeSymbol& v : data) {
    if (v && (*v < 0 || *v > max_value))
      throw std::invalid_argument("sequence entry outside [0, M]");
  }
}

IntSequence normalize(std::span<const std::int64_t> raw) {
  if (raw.empty()) throw std::invalid_argument("empty sequence");
  const std::int64_t lo = *std::min_element(raw.begin(), raw.end());
  const std::int64_t shift = lo < 0 ? -lo : 0;
  std::vector<Symbol> out(raw.begin(), raw.end());
  for (Symbol& v : out) v += shift;
  const Symbol hi = *std::max_element(out.begin(), out.end());
  return IntSequence(std::move(out), std::max<Symbol>(hi, 1));
}

NormalizedPair normalize_pair(std::span<const std::int64_t> raw_text,
                              std::span<const std::int64_t> raw_pattern) {
  if (raw_text.empty() || raw_pattern.empty())
    throw std::invalid_argument("empty sequence");
  std::int64_t lo = raw_text[0];
  for (std::int64_t v : raw_text) lo = std::min(lo, v);
  for (std::int64_t v : raw_pattern) lo = std::min(lo, v);
  const std::int64_t shift = lo < 0 ? -lo : 0;

  std::vector<Symbol> t(raw_text.begin(), raw_text.end());
  std::vector<Symbol> p(raw_pattern.begin(), raw_pattern.end());
  Symbol hi = 0;
  for (Symbol& v : t) hi = std::max(hi, v += shift);
  for (Symbol& v : p) hi = std::max(hi, v += shift);
  hi = std::max<Symbol>(hi, 1);
  return NormalizedPair{IntSequence(std::move(t), hi),
                        IntSequence(std::move(p), hi), shift};
}

RleSequence rle_encode(const WildcardSequence& s) {
  RleSequence out;
  out.total_length = static_cast<std::int64_t>(s.size());
  for (const MaybeSymbol& v : s.data) {
    if (!out.runs.empty() && out.runs.back().symbol == v) {
      ++out.runs.back().length;
    } else {
      out.runs.push_back(RleRun{v, 1});
    }
  }
  return out;
}

WildcardSequence rle_decode(const RleSequence& s) {
  std::vector<MaybeSymbol> data;
  data.reserve(static_cast<std::size_t>(s.total_length));
  Symbol hi = 1;
  for (const RleRun& run : s.runs) {
    if (run.length < 1) throw std::invalid_argument("run length must be >= 1");
    for (std::int64_t i = 0; i < run.length; ++i) data.push_back(run.symbol);
    if (run.symbol) hi = std::max(hi, *run.symbol);
  }
  if (static_cast<std::int64_t>(data.size()) != s.total_length)
    throw std::invalid_argument("run lengths disagree with total_length");
  return WildcardSequence(std::move(data), hi);
}

WildcardSequence to_wildcard(const IntSequence& s) {
  std::vector<MaybeSymbol> data(s.data.begin(), s.data.end());
  return WildcardSequence(std::move(data), s.max_value);
}

IntSequence generate(std::size_t length, Symbol alphabet_size,
                     std::optional<std::size_t> period,
                     std::size_t corruption_count, std::uint64_t seed) {
  if (length == 0) throw std::invalid_argument("empty sequence");
  if (alphabet_size < 1) throw std::invalid_argument("alphabet_size must be >= 1");
  if (period && (*period == 0 || *period > length))
    throw std::invalid_argument("period must be in [1, length]");
  if (corruption_count > length)
    throw std::invalid_argument("corruption_count exceeds length");

  Rng rng(seed);
  std::vector<Symbol> data(length);
  if (period) {
    std::vector<Symbol> base(*period);
    for (Symbol& v : base)
      v = static_cast<Symbol>(rng.below(static_cast<std::uint64_t>(alphabet_size)));
    for (std::size_t i = 0; i < length; ++i) data[i] = base[i % *period];
    // Exactly corruption_count distinct positions get overwritten.
    std::vector<std::size_t> positions(length);
    std::iota(positions.begin(), positions.end(), std::size_t{0});
    for (std::size_t i = 0; i < corruption_count; ++i) {
      const std::size_t j =
          i + static_cast<std::size_t>(rng.below(positions.size() - i));
      std::swap(positions[i], positions[j]);
      data[positions[i]] = static_cast<Symbol>(
          rng.below(static_cast<std::uint64_t>(alphabet_size)));
    }
  } else {
    for (Symbol& v : data)
      v = static_cast<Symbol>(rng.below(static_cast<std::uint64_t>(alphabet_size)));
  }
  return IntSequence(std::move(data), std::max<Symbol>(alphabet_size - 1, 1));
}

DistanceArray cap(const DistanceArray& d, std::int64_t k) {
  DistanceArray out;
  out.reserve(d.size());
  for (const Distance& v : d) {
    if (v.is_infinite() || v.value() > k) {
      out.push_back(Distance::infinity());
    } else {
      out.push_back(v);
    }
  }
  return out;
}

}  // namespace l1match
