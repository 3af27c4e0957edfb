#pragma once

#include <cstdint>
#include <vector>

#include "l1match/rng.hpp"
#include "l1match/seq.hpp"

namespace l1match {

// Repeated random binary projections of the alphabet.  A projection maps each
// symbol to one bit by hashing it with the repetition's seed; a mismatching
// pair separates with probability exactly 1/2, so twice the mean projected
// mismatch count estimates the Hamming distance.
struct ProjectionEstimate {
  std::vector<double> raw_means;  // mean projected mismatches per index
  std::size_t repetitions = 0;
  double zeta = 0.0;

  double estimate(std::size_t i) const { return 2.0 * raw_means[i]; }
  std::size_t size() const { return raw_means.size(); }
};

// Exact Hamming distances for 0/1 sequences via two correlations: matches of
// ones plus matches of zeros, subtracted from the pattern length.
DistanceArray ham_binary(std::span<const std::int64_t> text,
                         std::span<const std::int64_t> pattern);

// Number of repetitions used for accuracy zeta on instance size n.
std::size_t projection_repetitions(std::size_t n, double zeta);

// (1 +- zeta) whp estimates of all text-to-pattern Hamming distances.
// Entry i estimates Ham(T[i..i+m-1], P).  est = 0 exactly where Ham = 0.
ProjectionEstimate approx_ham(const IntSequence& text,
                              const IntSequence& pattern, double zeta,
                              Rng& rng);

// (1 +- zeta) whp estimates of the pattern's self-overlap Hamming distances:
// entry j estimates Ham(P[j+1..m-1], P[0..m-j-2]) for shift j+1, computed by
// projecting P once per repetition and correlating it against itself.
ProjectionEstimate approx_self_ham(const IntSequence& pattern, double zeta,
                                   Rng& rng);

}  // namespace l1match
