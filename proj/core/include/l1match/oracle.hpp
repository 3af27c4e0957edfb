#pragma once

#include "l1match/seq.hpp"

namespace l1match::oracle {

enum class Metric { kL1, kHamming };

// Brute-force references.  Deliberately plain double loops with no shared
// machinery with the optimized paths; these define correctness everywhere
// else in the library.

// L1 text-to-pattern distances; entry i is sum_j |T[i+j] - P[j]|.  If k is
// given, entries whose running sum exceeds k become infinity.
DistanceArray naive_l1(const IntSequence& text, const IntSequence& pattern);
DistanceArray naive_l1(const IntSequence& text, const IntSequence& pattern,
                       std::int64_t k);

// Hamming text-to-pattern distances; entry i counts j with T[i+j] != P[j].
DistanceArray naive_ham(const IntSequence& text, const IntSequence& pattern);

// Wildcard-aware distances: any pair involving a wildcard contributes zero.
DistanceArray naive_wild(const WildcardSequence& text,
                         const WildcardSequence& pattern, Metric metric);

}  // namespace l1match::oracle
