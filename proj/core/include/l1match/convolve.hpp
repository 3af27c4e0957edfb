#pragma once

#include <cstdint>
#include <functional>

#include "l1match/seq.hpp"

namespace l1match {

enum class CorrelateBackend { kAuto, kNaive, kTransform };

// Sliding dot products: out[i] = sum_j a[i+j] * b[j] for i in [0, n - m].
// Every backend returns exact integers.  Precondition: the worst-case
// magnitude m * max|a| * max|b| stays below 2^60 (checked).  Increments the
// correlation counter once per call.
ScoreArray correlate(std::span<const std::int64_t> a,
                     std::span<const std::int64_t> b,
                     CorrelateBackend backend = CorrelateBackend::kAuto);

// Built-in weights get inlined inner loops; generic weights go through the
// stored callable.
enum class WeightKind { kGeneric, kParityScore, kAbsDiff, kInequality };

// Sign estimate of x - y from the lowest bits: 0 when x and y share parity,
// +1 when sgn(x - y) agrees with sgn(x%2 - y%2), -1 otherwise.
inline std::int64_t parity_sign_score(Symbol x, Symbol y) {
  const std::int64_t par = (x ^ y) & 1;
  const std::int64_t gt = x > y ? 1 : 0;
  const std::int64_t gt0 = (x & 1) > (y & 1) ? 1 : 0;
  return par * (1 - 2 * (gt ^ gt0));
}

// A bilinear weight on symbol pairs.  evaluate's argument order is
// (text symbol, pattern symbol); both arguments range over [0, domain_size).
// |evaluate| is bounded by max_magnitude.
struct WeightFunction {
  std::function<std::int64_t(Symbol, Symbol)> evaluate;
  Symbol domain_size = 0;
  std::int64_t max_magnitude = 1;
  WeightKind kind = WeightKind::kGeneric;

  static WeightFunction generic(std::function<std::int64_t(Symbol, Symbol)> fn,
                                Symbol domain, std::int64_t magnitude);
  static WeightFunction parity_score(Symbol domain);
  static WeightFunction abs_diff(Symbol domain);
  static WeightFunction inequality(Symbol domain);
};

enum class WeightedPolicy { kAuto, kPerSymbolCorrelation, kDirect };

// out[i] = sum_j sigma(T[i+j], P[j]).  The per-symbol-correlation route
// performs one correlation per alphabet symbol c in [0, domain): the
// characteristic vector of c in the pattern against {sigma(t_i, c)}_i.  The
// direct route is the O(nm) summation with identical output.  kAuto picks
// direct when |domain| * n * log2(m) exceeds n * m.
ScoreArray weighted_mismatches(const IntSequence& text,
                               const IntSequence& pattern,
                               const WeightFunction& weight,
                               WeightedPolicy policy = WeightedPolicy::kAuto);

}  // namespace l1match
