#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "l1match/kernel.hpp"
#include "l1match/rng.hpp"
#include "l1match/seq.hpp"

namespace l1match {

// Base solver computing an exact distance array on wildcard-free inputs.
using BaseSolver =
    std::function<DistanceArray(const IntSequence&, const IntSequence&)>;

// target(x, y) = constant_per_position + sum_i alpha_i * base(f_i(x), g_i(y)),
// lifted entrywise to whole distance arrays.
struct ReductionTerm {
  std::int64_t alpha_num = 1;
  std::int64_t alpha_den = 1;  // > 0
  std::function<Symbol(Symbol)> text_map;     // identity when empty
  std::function<Symbol(Symbol)> pattern_map;  // identity when empty
};

struct LinearReduction {
  std::vector<ReductionTerm> terms;
  // Additive constant per aligned pair; the per-alignment constant is m
  // times this rational.
  std::int64_t constant_num = 0;
  std::int64_t constant_den = 1;
};

DistanceArray apply(const LinearReduction& reduction, const IntSequence& text,
                    const IntSequence& pattern, const BaseSolver& base);

// Ham(T, P)[i] = m - L1(T+1, P)[i]/2 - L1(T, P+1)[i]/2 + L1(T, P)[i].
LinearReduction ham_to_l1();

// |x - y| = sum over thresholds t in [1, M] of [x >= t] != [y >= t]; one
// binary Hamming instance per threshold, each preserving run boundaries.
std::vector<LinearReduction> l1_to_ham(Symbol max_value);

// Sum of apply() over a reduction family (the threshold decomposition).
DistanceArray apply_family(const std::vector<LinearReduction>& family,
                           const IntSequence& text, const IntSequence& pattern,
                           const BaseSolver& base);

// Exact Hamming on wildcard-free inputs via per-symbol correlations; the
// default base solver for the composed pipeline below.
DistanceArray exact_ham(const IntSequence& text, const IntSequence& pattern);

// The k-approximated pipeline with its RLE-L1 backend replaced by threshold
// decomposition plus wildcard elimination feeding a Hamming solver.
DistanceArray kapprox_l1_via_ham(const IntSequence& text,
                                 const IntSequence& pattern, std::int64_t k,
                                 Rng& rng, const BaseSolver& ham_backend = {},
                                 PipelineTrace* trace = nullptr);

}  // namespace l1match
