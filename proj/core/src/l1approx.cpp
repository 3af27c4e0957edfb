#include "l1match/l1approx.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <vector>

#include "l1match/counters.hpp"
#include "l1match/parallel.hpp"

namespace l1match {

namespace {

int ceil_log2(Symbol m) {
  if (m < 1) throw std::invalid_argument("bound must be >= 1");
  if (m == 1) return 0;
  return static_cast<int>(std::bit_width(static_cast<std::uint64_t>(m - 1)));
}

}  // namespace

ApproxParams ApproxParams::from_epsilon(double epsilon, Symbol max_value,
                                        std::size_t text_length) {
  if (!(epsilon > 0.0) || epsilon > 1.0)
    throw std::invalid_argument("epsilon must be in (0, 1]");
  if (max_value < 1) throw std::invalid_argument("bound must be >= 1");
  ApproxParams p;
  p.epsilon = epsilon;
  p.max_value = max_value;
  const int log_m = ceil_log2(max_value);
  p.delta = epsilon / (24.0 * (3.0 + static_cast<double>(log_m)));
  const double inv_delta = 24.0 * (3.0 + static_cast<double>(log_m));
  int b = 1;
  while (std::ldexp(epsilon, b) < inv_delta && b < 62) ++b;
  p.window_bits = b;
  p.levels = log_m + 1;
  p.shift_bound = std::int64_t{1} << log_m;
  p.repetitions = std::max<std::size_t>(
      1, static_cast<std::size_t>(
             std::ceil(8.0 * std::log(static_cast<double>(text_length) + 1.0))));
  return p;
}

std::int64_t score(Symbol x, Symbol y) { return parity_sign_score(x, y); }

ScoreArray approximate_once_with_shift(const IntSequence& text,
                                       const IntSequence& pattern,
                                       const ApproxParams& params,
                                       std::int64_t shift,
                                       WeightedPolicy policy) {
  const std::size_t n = text.size(), m = pattern.size();
  if (m > n) throw std::invalid_argument("pattern longer than text");
  if (shift < 0 || shift >= params.shift_bound)
    throw std::invalid_argument("shift outside [0, shift_bound)");

  if (params.exact_window()) {
    // One window already covers every bit, so a single exact level suffices;
    // the shift cancels in every |x - y|.
    return weighted_mismatches(text, pattern,
                               WeightFunction::abs_diff(params.max_value + 1),
                               policy);
  }

  const Symbol window_domain = Symbol{1} << params.window_bits;
  const Symbol mask = window_domain - 1;
  std::vector<Symbol> shifted_text(n), shifted_pattern(m);
  for (std::size_t t = 0; t < n; ++t) shifted_text[t] = text.data[t] + shift;
  for (std::size_t j = 0; j < m; ++j)
    shifted_pattern[j] = pattern.data[j] + shift;

  ScoreArray out(n - m + 1, 0);
  std::vector<Symbol> tw(n), pw(m);
  const WeightFunction weight = WeightFunction::parity_score(window_domain);
  for (int level = 0; level < params.levels; ++level) {
    for (std::size_t t = 0; t < n; ++t)
      tw[t] = (shifted_text[t] >> level) & mask;
    for (std::size_t j = 0; j < m; ++j)
      pw[j] = (shifted_pattern[j] >> level) & mask;
    const ScoreArray level_sum = weighted_mismatches(
        IntSequence(tw, std::max<Symbol>(mask, 1)),
        IntSequence(pw, std::max<Symbol>(mask, 1)), weight, policy);
    for (std::size_t i = 0; i < out.size(); ++i)
      out[i] += level_sum[i] << level;
  }
  return out;
}

ScoreArray approximate_once(const IntSequence& text, const IntSequence& pattern,
                            const ApproxParams& params, Rng& rng,
                            WeightedPolicy policy) {
  const std::int64_t shift = static_cast<std::int64_t>(
      rng.below(static_cast<std::uint64_t>(params.shift_bound)));
  return approximate_once_with_shift(text, pattern, params, shift, policy);
}

DistanceArray approximate(const IntSequence& text, const IntSequence& pattern,
                          const ApproxParams& params, Rng& rng,
                          WeightedPolicy policy) {
  const std::size_t reps = params.repetitions;
  std::vector<ScoreArray> runs(reps);
  counters().repetitions.fetch_add(reps, std::memory_order_relaxed);
  parallel_for(0, reps, [&](std::size_t r) {
    Rng stream = rng.derive(r);
    runs[r] = approximate_once(text, pattern, params, stream, policy);
  });

  const std::size_t out_len = text.size() - pattern.size() + 1;
  DistanceArray out;
  out.reserve(out_len);
  std::vector<std::int64_t> column(reps);
  for (std::size_t i = 0; i < out_len; ++i) {
    for (std::size_t r = 0; r < reps; ++r) column[r] = runs[r][i];
    auto mid = column.begin() + static_cast<std::ptrdiff_t>((reps - 1) / 2);
    std::nth_element(column.begin(), mid, column.end());
    out.push_back(Distance::finite(std::max<std::int64_t>(*mid, 0)));
  }
  return out;
}

DistanceArray approximate(const IntSequence& text, const IntSequence& pattern,
                          double epsilon, Rng& rng) {
  const ApproxParams params = ApproxParams::from_epsilon(
      epsilon, std::max(text.max_value, pattern.max_value), text.size());
  return approximate(text, pattern, params, rng);
}

}  // namespace l1match
