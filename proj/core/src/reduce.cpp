#include "l1match/reduce.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

#include "l1match/convolve.hpp"
#include "l1match/rledist.hpp"

namespace l1match {

namespace {

IntSequence map_sequence(const IntSequence& s,
                         const std::function<Symbol(Symbol)>& fn) {
  if (!fn) return s;
  std::vector<Symbol> data(s.size());
  Symbol hi = 1;
  for (std::size_t i = 0; i < s.size(); ++i) {
    data[i] = fn(s.data[i]);
    if (data[i] < 0)
      throw std::invalid_argument("reduction map produced a negative symbol");
    hi = std::max(hi, data[i]);
  }
  return IntSequence(std::move(data), hi);
}

}  // namespace

DistanceArray apply(const LinearReduction& reduction, const IntSequence& text,
                    const IntSequence& pattern, const BaseSolver& base) {
  if (!base) throw std::invalid_argument("missing base solver");
  if (pattern.size() > text.size())
    throw std::invalid_argument("pattern longer than text");
  if (reduction.constant_den <= 0)
    throw std::invalid_argument("denominator must be positive");

  std::int64_t common = reduction.constant_den;
  for (const ReductionTerm& term : reduction.terms) {
    if (term.alpha_den <= 0)
      throw std::invalid_argument("denominator must be positive");
    common = std::lcm(common, term.alpha_den);
  }

  const std::size_t len = text.size() - pattern.size() + 1;
  const std::int64_t m = static_cast<std::int64_t>(pattern.size());
  std::vector<std::int64_t> acc(
      len, m * reduction.constant_num * (common / reduction.constant_den));

  for (const ReductionTerm& term : reduction.terms) {
    const IntSequence mapped_text = map_sequence(text, term.text_map);
    const IntSequence mapped_pattern = map_sequence(pattern, term.pattern_map);
    const DistanceArray part = base(mapped_text, mapped_pattern);
    if (part.size() != len)
      throw std::logic_error("base solver returned wrong length");
    const std::int64_t scale = term.alpha_num * (common / term.alpha_den);
    for (std::size_t i = 0; i < len; ++i) {
      if (part[i].is_infinite())
        throw std::invalid_argument(
            "reduction requires uncapped base results");
      acc[i] += scale * part[i].value();
    }
  }

  DistanceArray out;
  out.reserve(len);
  for (std::int64_t v : acc) {
    if (v % common != 0 || v < 0)
      throw std::logic_error("reduction identity violated");
    out.push_back(Distance::finite(v / common));
  }
  return out;
}

LinearReduction ham_to_l1() {
  LinearReduction red;
  red.constant_num = 1;
  red.constant_den = 1;
  red.terms.push_back(
      {-1, 2, [](Symbol x) { return x + 1; }, {}});
  red.terms.push_back(
      {-1, 2, {}, [](Symbol y) { return y + 1; }});
  red.terms.push_back({1, 1, {}, {}});
  return red;
}

std::vector<LinearReduction> l1_to_ham(Symbol max_value) {
  if (max_value < 1) throw std::invalid_argument("bound must be >= 1");
  std::vector<LinearReduction> family;
  family.reserve(static_cast<std::size_t>(max_value));
  for (Symbol t = 1; t <= max_value; ++t) {
    LinearReduction red;
    const auto threshold = [t](Symbol x) { return x >= t ? 1 : 0; };
    red.terms.push_back({1, 1, threshold, threshold});
    family.push_back(std::move(red));
  }
  return family;
}

DistanceArray apply_family(const std::vector<LinearReduction>& family,
                           const IntSequence& text, const IntSequence& pattern,
                           const BaseSolver& base) {
  if (family.empty()) throw std::invalid_argument("empty reduction family");
  const std::size_t len = text.size() - pattern.size() + 1;
  std::vector<std::int64_t> acc(len, 0);
  for (const LinearReduction& red : family) {
    const DistanceArray part = apply(red, text, pattern, base);
    for (std::size_t i = 0; i < len; ++i) acc[i] += part[i].value();
  }
  DistanceArray out;
  out.reserve(len);
  for (std::int64_t v : acc) out.push_back(Distance::finite(v));
  return out;
}

DistanceArray exact_ham(const IntSequence& text, const IntSequence& pattern) {
  const Symbol domain = std::max(text.max_value, pattern.max_value) + 1;
  const ScoreArray raw =
      weighted_mismatches(text, pattern, WeightFunction::inequality(domain));
  DistanceArray out;
  out.reserve(raw.size());
  for (std::int64_t v : raw) out.push_back(Distance::finite(v));
  return out;
}

DistanceArray kapprox_l1_via_ham(const IntSequence& text,
                                 const IntSequence& pattern, std::int64_t k,
                                 Rng& rng, const BaseSolver& ham_backend,
                                 PipelineTrace* trace) {
  const BaseSolver ham = ham_backend ? ham_backend : BaseSolver(exact_ham);

  // RLE backend: L1 on a wildcard instance equals the sum over thresholds
  // t of wildcard Hamming between the thresholded strings; each of those is
  // in turn a difference of two wildcard-free Hamming arrays.  Thresholded
  // symbols map to {1, 2} so the eliminated instances keep wildcards at 0.
  const RleBackend backend = [&ham](const RleSequence& t_rle,
                                    const RleSequence& p_rle) {
    const WildcardSequence t = rle_decode(t_rle);
    const WildcardSequence p = rle_decode(p_rle);
    Symbol hi = 0;
    for (const MaybeSymbol& v : t.data)
      if (v.has_value()) hi = std::max(hi, *v);
    for (const MaybeSymbol& v : p.data)
      if (v.has_value()) hi = std::max(hi, *v);

    const std::size_t len = t.size() - p.size() + 1;
    std::vector<std::int64_t> acc(len, 0);

    const auto thresholded = [](const WildcardSequence& s, Symbol threshold) {
      WildcardSequence out;
      out.max_value = 2;
      out.data.resize(s.size());
      for (std::size_t i = 0; i < s.size(); ++i)
        if (s.data[i].has_value())
          out.data[i] = *s.data[i] >= threshold ? 2 : 1;
      return out;
    };

    // The indicator halves of every threshold instance coincide, so their
    // Hamming array is computed once.
    std::vector<std::int64_t> indicator_part;
    for (Symbol threshold = 1; threshold <= hi; ++threshold) {
      const EliminatedPair parts =
          eliminate_wildcards(thresholded(t, threshold), thresholded(p, threshold));
      const DistanceArray d1 = ham(parts.values_text, parts.values_pattern);
      if (indicator_part.empty()) {
        const DistanceArray d2 =
            ham(parts.indicator_text, parts.indicator_pattern);
        indicator_part.resize(len);
        for (std::size_t i = 0; i < len; ++i) indicator_part[i] = d2[i].value();
      }
      for (std::size_t i = 0; i < len; ++i)
        acc[i] += d1[i].value() - indicator_part[i];
    }

    DistanceArray out;
    out.reserve(len);
    for (std::int64_t v : acc) {
      if (v < 0) throw std::logic_error("reduction identity violated");
      out.push_back(Distance::finite(v));
    }
    return out;
  };

  return kapprox(text, pattern, k, oracle::Metric::kL1, rng, backend, trace);
}

}  // namespace l1match
