#include "l1match/hamapprox.hpp"

#include <algorithm>
#include <cmath>

#include "l1match/convolve.hpp"
#include "l1match/counters.hpp"
#include "l1match/parallel.hpp"

namespace l1match {

namespace {

void check_binary(std::span<const std::int64_t> s) {
  for (std::int64_t v : s)
    if (v != 0 && v != 1)
      throw std::invalid_argument("ham_binary expects 0/1 entries");
}

inline std::int64_t project_bit(std::uint64_t rep_seed, Symbol symbol) {
  return static_cast<std::int64_t>(
      mix64(rep_seed ^ mix64(static_cast<std::uint64_t>(symbol) +
                             0xd1b54a32d192ed03ULL)) >>
      63);
}

void check_zeta(double zeta) {
  if (!(zeta > 0.0) || zeta >= 1.0)
    throw std::invalid_argument("zeta must be in (0, 1)");
}

}  // namespace

DistanceArray ham_binary(std::span<const std::int64_t> text,
                         std::span<const std::int64_t> pattern) {
  if (pattern.size() > text.size())
    throw std::invalid_argument("pattern longer than text");
  check_binary(text);
  check_binary(pattern);
  const std::size_t n = text.size(), m = pattern.size();
  std::vector<std::int64_t> text_c(n), pattern_c(m);
  for (std::size_t i = 0; i < n; ++i) text_c[i] = 1 - text[i];
  for (std::size_t j = 0; j < m; ++j) pattern_c[j] = 1 - pattern[j];
  const ScoreArray ones = correlate(text, pattern);
  const ScoreArray zeros = correlate(text_c, pattern_c);
  DistanceArray out;
  out.reserve(n - m + 1);
  for (std::size_t i = 0; i + m <= n; ++i)
    out.push_back(
        Distance::finite(static_cast<std::int64_t>(m) - ones[i] - zeros[i]));
  return out;
}

std::size_t projection_repetitions(std::size_t n, double zeta) {
  check_zeta(zeta);
  return static_cast<std::size_t>(std::ceil(
      64.0 * std::log(static_cast<double>(n) + 2.0) / (zeta * zeta)));
}

ProjectionEstimate approx_ham(const IntSequence& text,
                              const IntSequence& pattern, double zeta,
                              Rng& rng) {
  check_zeta(zeta);
  const std::size_t n = text.size(), m = pattern.size();
  if (m > n) throw std::invalid_argument("pattern longer than text");
  const std::size_t reps = projection_repetitions(n, zeta);
  const std::size_t out_len = n - m + 1;
  const std::uint64_t base = rng.u64();
  counters().repetitions.fetch_add(reps, std::memory_order_relaxed);

  const std::size_t blocks = std::min<std::size_t>(worker_count(), reps);
  std::vector<std::vector<std::int64_t>> partial(
      blocks, std::vector<std::int64_t>(out_len, 0));
  parallel_for(0, blocks, [&](std::size_t blk) {
    const std::size_t lo = reps * blk / blocks;
    const std::size_t hi = reps * (blk + 1) / blocks;
    std::vector<std::int64_t> pt(n), pp(m);
    std::vector<std::int64_t>& acc = partial[blk];
    for (std::size_t r = lo; r < hi; ++r) {
      const std::uint64_t rep_seed = mix64(base ^ mix64(r + 1));
      for (std::size_t i = 0; i < n; ++i)
        pt[i] = project_bit(rep_seed, text.data[i]);
      for (std::size_t j = 0; j < m; ++j)
        pp[j] = project_bit(rep_seed, pattern.data[j]);
      const DistanceArray d = ham_binary(pt, pp);
      for (std::size_t i = 0; i < out_len; ++i) acc[i] += d[i].value();
    }
  });

  ProjectionEstimate est;
  est.repetitions = reps;
  est.zeta = zeta;
  est.raw_means.assign(out_len, 0.0);
  std::vector<std::int64_t> totals(out_len, 0);
  for (const std::vector<std::int64_t>& acc : partial)
    for (std::size_t i = 0; i < out_len; ++i) totals[i] += acc[i];
  for (std::size_t i = 0; i < out_len; ++i)
    est.raw_means[i] =
        static_cast<double>(totals[i]) / static_cast<double>(reps);
  return est;
}

ProjectionEstimate approx_self_ham(const IntSequence& pattern, double zeta,
                                   Rng& rng) {
  check_zeta(zeta);
  const std::size_t m = pattern.size();
  const std::size_t reps = projection_repetitions(m, zeta);
  const std::uint64_t base = rng.u64();
  ProjectionEstimate est;
  est.repetitions = reps;
  est.zeta = zeta;
  if (m < 2) return est;
  counters().repetitions.fetch_add(reps, std::memory_order_relaxed);

  const std::size_t shifts = m - 1;
  const std::size_t blocks = std::min<std::size_t>(worker_count(), reps);
  std::vector<std::vector<std::int64_t>> partial(
      blocks, std::vector<std::int64_t>(shifts, 0));
  parallel_for(0, blocks, [&](std::size_t blk) {
    const std::size_t lo = reps * blk / blocks;
    const std::size_t hi = reps * (blk + 1) / blocks;
    std::vector<std::int64_t> ones(2 * m - 1, 0), zeros(2 * m - 1, 0);
    std::vector<std::int64_t> proj(m), comp(m);
    std::vector<std::int64_t>& acc = partial[blk];
    for (std::size_t r = lo; r < hi; ++r) {
      const std::uint64_t rep_seed = mix64(base ^ mix64(r + 1));
      for (std::size_t j = 0; j < m; ++j) {
        proj[j] = project_bit(rep_seed, pattern.data[j]);
        comp[j] = 1 - proj[j];
      }
      std::fill(ones.begin(), ones.end(), 0);
      std::fill(zeros.begin(), zeros.end(), 0);
      std::copy(proj.begin(), proj.end(), ones.begin());
      std::copy(comp.begin(), comp.end(), zeros.begin());
      const ScoreArray match_ones = correlate(ones, proj);
      const ScoreArray match_zeros = correlate(zeros, comp);
      for (std::size_t shift = 1; shift < m; ++shift) {
        const std::int64_t overlap = static_cast<std::int64_t>(m - shift);
        const std::int64_t matches =
            match_ones[shift] + match_zeros[shift];
        acc[shift - 1] += overlap - matches;
      }
    }
  });

  est.raw_means.assign(shifts, 0.0);
  std::vector<std::int64_t> totals(shifts, 0);
  for (const std::vector<std::int64_t>& acc : partial)
    for (std::size_t i = 0; i < shifts; ++i) totals[i] += acc[i];
  for (std::size_t i = 0; i < shifts; ++i)
    est.raw_means[i] =
        static_cast<double>(totals[i]) / static_cast<double>(reps);
  return est;
}

}  // namespace l1match
