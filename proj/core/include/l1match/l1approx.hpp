#pragma once

#include <cstdint>

#include "l1match/convolve.hpp"
#include "l1match/rng.hpp"
#include "l1match/seq.hpp"

namespace l1match {

// Parameters of the randomized L1 estimator.  With L = ceil(log2 M):
//   delta       = epsilon / (24 * (3 + L))
//   window_bits = smallest positive b with 2^b >= 1/delta
//   levels      = L + 1
//   shift_bound = 2^L  (the random shift is uniform on [0, shift_bound))
//   repetitions = max(1, ceil(8 * ln(n + 1)))
struct ApproxParams {
  double epsilon = 1.0;
  Symbol max_value = 1;
  double delta = 1.0;
  int window_bits = 1;
  int levels = 1;
  std::int64_t shift_bound = 1;
  std::size_t repetitions = 1;

  static ApproxParams from_epsilon(double epsilon, Symbol max_value,
                                   std::size_t text_length);

  // When one window covers every bit that can appear after shifting, a single
  // exact level replaces the estimator and the output is exact.
  bool exact_window() const {
    return (std::int64_t{1} << window_bits) >= max_value + shift_bound;
  }
};

// Sign estimate from the lowest bits of a window pair; the building block of
// the level sums.  Returns 0 on equal parity, else +1 when sgn(x - y) agrees
// with sgn(x%2 - y%2) and -1 otherwise.
std::int64_t score(Symbol x, Symbol y);

// One estimator run with an explicit shift: sums over levels i of
// 2^i * weighted_mismatches((T + delta) >> i mod 2^b, (P + delta) >> i mod 2^b,
// score).  Signed entries; may under- or overshoot per alignment.
ScoreArray approximate_once_with_shift(
    const IntSequence& text, const IntSequence& pattern,
    const ApproxParams& params, std::int64_t shift,
    WeightedPolicy policy = WeightedPolicy::kAuto);

// One estimator run with a fresh uniform shift drawn from rng.
ScoreArray approximate_once(const IntSequence& text, const IntSequence& pattern,
                            const ApproxParams& params, Rng& rng,
                            WeightedPolicy policy = WeightedPolicy::kAuto);

// Full (1 +- epsilon) estimator: median over params.repetitions independent
// runs, clamped to zero after the median.  Exact zeros are preserved
// deterministically.
DistanceArray approximate(const IntSequence& text, const IntSequence& pattern,
                          const ApproxParams& params, Rng& rng,
                          WeightedPolicy policy = WeightedPolicy::kAuto);

DistanceArray approximate(const IntSequence& text, const IntSequence& pattern,
                          double epsilon, Rng& rng);

}  // namespace l1match
