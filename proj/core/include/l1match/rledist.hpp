#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <utility>
#include <vector>

#include "l1match/seq.hpp"

namespace l1match {

// Twice-differenced distance array: d2[i] = S[i+2] - 2*S[i+1] + S[i],
// together with the two anchor values needed to invert the differencing.
struct SecondDerivative {
  std::vector<std::int64_t> d2;  // length max(length - 2, 0)
  std::int64_t s0 = 0;           // S[0]
  std::int64_t s1 = 0;           // S[1]; ignored when length == 1
  std::size_t length = 0;        // length of S
};

SecondDerivative differentiate(std::span<const std::int64_t> values);
DistanceArray integrate(const SecondDerivative& d);

// Exact wildcard Hamming / L1 distance arrays computed per block pair:
// each pair of runs contributes a trapezoid to the match (or |a-b| weight)
// profile, applied as four point updates to the second derivative.
DistanceArray rle_ham(const RleSequence& text, const RleSequence& pattern);
DistanceArray rle_l1(const RleSequence& text, const RleSequence& pattern);

// Wildcard elimination: Ham(T,P) = Ham(T1,P1) - Ham(T2,P2), where T1/P1
// replace wildcards by 0 (symbols must be >= 1) and T2/P2 are non-wildcard
// indicators. Exact for arbitrary wildcard inputs.
struct EliminatedPair {
  IntSequence values_text;      // wildcard -> 0, symbol kept
  IntSequence values_pattern;
  IntSequence indicator_text;   // wildcard -> 0, symbol -> 1
  IntSequence indicator_pattern;
};
EliminatedPair eliminate_wildcards(const WildcardSequence& text,
                                   const WildcardSequence& pattern);

// Backend computing (possibly capped) Hamming on wildcard-free inputs;
// the third argument is the cap, which eliminate_wildcards-based callers
// guarantee is never exceeded.
using CappedHamBackend = std::function<DistanceArray(
    const IntSequence&, const IntSequence&, std::int64_t)>;

// k-sparse wildcard Hamming: each input carries at most k non-wildcard
// symbols, so a 2k-capped backend on the two eliminated instances suffices.
DistanceArray sparse_to_capped(const WildcardSequence& text,
                               const WildcardSequence& pattern, std::int64_t k,
                               const CappedHamBackend& backend);

}  // namespace l1match
