#include "l1match/kernel.hpp"

#include <algorithm>
#include <optional>
#include <stdexcept>

#include "l1match/convolve.hpp"
#include "l1match/hamapprox.hpp"
#include "l1match/kangaroo.hpp"
#include "l1match/rledist.hpp"

namespace l1match {

namespace {

constexpr double kZeta = 1.0 / 3.0;

// Two-sided (1 +- 1/3) estimates: accepting estimate <= (16/3)k certifies a
// true self-overlap distance <= 8k, and rejecting everything <= k certifies
// that every such shift has true distance > 4k.
constexpr double period_threshold(std::int64_t k) { return 16.0 * k / 3.0; }

// Keeping estimate <= (4/3)k retains every alignment with true Hamming <= k
// and certifies true Hamming <= 2k for everything kept.
constexpr double filter_threshold(std::int64_t k) { return 4.0 * k / 3.0; }

DistanceArray exact_distance(const IntSequence& text,
                             const IntSequence& pattern, oracle::Metric metric,
                             std::int64_t cap_at) {
  const Symbol domain = std::max(text.max_value, pattern.max_value) + 1;
  const WeightFunction weight = metric == oracle::Metric::kL1
                                    ? WeightFunction::abs_diff(domain)
                                    : WeightFunction::inequality(domain);
  const ScoreArray raw = weighted_mismatches(text, pattern, weight);
  DistanceArray out;
  out.reserve(raw.size());
  for (std::int64_t v : raw)
    out.push_back(v <= cap_at ? Distance::finite(v) : Distance::infinity());
  return out;
}

// Split a sorted candidate group at the median until each group's span fits
// the kernel length budget.
void split_by_span(std::vector<std::size_t> group, std::size_t max_span,
                   std::vector<std::vector<std::size_t>>& out) {
  if (group.back() - group.front() <= max_span) {
    out.push_back(std::move(group));
    return;
  }
  const std::size_t mid = group.size() / 2;
  std::vector<std::size_t> left(group.begin(),
                                group.begin() + static_cast<std::ptrdiff_t>(mid));
  std::vector<std::size_t> right(group.begin() + static_cast<std::ptrdiff_t>(mid),
                                 group.end());
  split_by_span(std::move(left), max_span, out);
  split_by_span(std::move(right), max_span, out);
}

std::size_t run_count(const WildcardSequence& s) {
  return rle_encode(s).runs.size();
}

}  // namespace

PeriodReport classify_period(const IntSequence& pattern, std::int64_t k,
                             Rng& rng) {
  if (k < 1) throw std::invalid_argument("k must be >= 1");
  PeriodReport report;
  const std::size_t m = pattern.size();
  if (m < 2) return report;

  const ProjectionEstimate est = approx_self_ham(pattern, kZeta, rng);
  const std::size_t max_shift =
      std::min<std::size_t>(static_cast<std::size_t>(k), m - 1);
  report.estimates.reserve(max_shift);
  for (std::size_t shift = 1; shift <= max_shift; ++shift)
    report.estimates.push_back(est.estimate(shift - 1));
  for (std::size_t shift = 1; shift <= max_shift; ++shift) {
    if (report.estimates[shift - 1] <= period_threshold(k)) {
      report.period_case = PeriodReport::Case::kSmallPeriod;
      report.period = static_cast<std::int64_t>(shift);
      break;
    }
  }
  return report;
}

std::vector<std::size_t> filter_alignments(const IntSequence& chunk,
                                           const IntSequence& pattern,
                                           std::int64_t k, Rng& rng) {
  const std::size_t n = chunk.size(), m = pattern.size();
  if (m > n) throw std::invalid_argument("pattern longer than text");
  if (n > 2 * m) throw std::invalid_argument("chunk longer than 2m");
  if (k < 0) throw std::invalid_argument("k must be >= 0");

  std::vector<std::size_t> kept;
  const ProjectionEstimate est = approx_ham(chunk, pattern, kZeta, rng);
  for (std::size_t i = 0; i < est.size(); ++i)
    if (est.estimate(i) <= filter_threshold(k)) kept.push_back(i);
  return kept;
}

Region extract_region(const IntSequence& chunk,
                      const std::vector<std::size_t>& candidates,
                      std::size_t pattern_length) {
  if (candidates.empty()) throw std::invalid_argument("no candidates");
  const std::size_t first = candidates.front();
  const std::size_t last = candidates.back();
  if (last + pattern_length > chunk.size())
    throw std::out_of_range("candidate window exceeds chunk");
  std::vector<Symbol> data(chunk.data.begin() + static_cast<std::ptrdiff_t>(first),
                           chunk.data.begin() +
                               static_cast<std::ptrdiff_t>(last + pattern_length));
  return Region{IntSequence(std::move(data), chunk.max_value), first};
}

KernelInstance kernelize(const IntSequence& pattern, const IntSequence& region,
                         std::int64_t period, std::int64_t k) {
  const std::size_t m = pattern.size();
  const std::size_t u = region.size();
  if (period < 1 || static_cast<std::size_t>(period) >= m)
    throw std::invalid_argument("degenerate period");
  if (period > k) throw std::invalid_argument("period exceeds k");
  if (u < m) throw std::invalid_argument("region shorter than pattern");

  const std::size_t ell = static_cast<std::size_t>(period);
  const std::size_t height = (u + ell - 1) / ell;
  const Symbol bound = std::max(pattern.max_value, region.max_value);

  KernelInstance inst;
  inst.period = period;
  inst.column_height = height;

  // Pattern grid: column r holds residue class r (pattern[e*ell + r] at row
  // e), wildcard below the class.
  inst.p_star.data.assign(ell * height, std::nullopt);
  inst.p_star.max_value = bound;
  for (std::size_t r = 0; r < ell; ++r)
    for (std::size_t e = 0; e < height; ++e) {
      const std::size_t src = e * ell + r;
      if (src < m) inst.p_star.data[r * height + e] = pattern.data[src];
    }

  // Text grid: columns 0..ell-1 hold the region's residue classes; columns
  // ell..2*ell-1 repeat them shifted up one row, so alignments whose column
  // sum spills past ell still read the right symbols.
  inst.t_star.data.assign(2 * ell * height, std::nullopt);
  inst.t_star.max_value = bound;
  for (std::size_t c = 0; c < ell; ++c)
    for (std::size_t f = 0; f < height; ++f) {
      const std::size_t src = f * ell + c;
      if (src < u) inst.t_star.data[c * height + f] = region.data[src];
      const std::size_t shifted = (f + 1) * ell + c;
      if (shifted < u)
        inst.t_star.data[(ell + c) * height + f] = region.data[shifted];
    }

  inst.candidate_set.resize(u - m + 1);
  for (std::size_t i = 0; i + m <= u; ++i) inst.candidate_set[i] = i;
  return inst;
}

DistanceArray kapprox(const IntSequence& text, const IntSequence& pattern,
                      std::int64_t k, oracle::Metric metric, Rng& rng,
                      const RleBackend& backend, PipelineTrace* trace) {
  const std::size_t n = text.size(), m = pattern.size();
  if (m > n) throw std::invalid_argument("pattern longer than text");
  if (k < 0) throw std::invalid_argument("k must be >= 0");

  const RleBackend effective_backend =
      backend ? backend
              : (metric == oracle::Metric::kL1 ? RleBackend(rle_l1)
                                               : RleBackend(rle_ham));
  const std::size_t len = n - m + 1;

  // Verification beats kernelization once k reaches m; compute exactly.
  if (static_cast<std::size_t>(k) >= m) {
    if (trace) trace->exact_fallback = true;
    return exact_distance(text, pattern, metric, k);
  }

  PeriodReport report;
  if (k >= 1 && m >= 2) {
    Rng period_rng = rng.derive(0);
    report = classify_period(pattern, k, period_rng);
  }
  if (trace) trace->report = report;

  // Kernelize only while the period is comfortably below m; otherwise the
  // verification route is just as exact and cheaper to reason about.
  const bool kernel_route =
      report.period_case == PeriodReport::Case::kSmallPeriod &&
      static_cast<std::size_t>(report.period) <= m / 4;
  const std::size_t ell = kernel_route ? static_cast<std::size_t>(report.period) : 0;

  std::optional<LcpIndex> index;
  const auto verify = [&](std::size_t global_alignment) {
    if (!index) index.emplace(text, pattern);
    return verify_alignment(*index, text, pattern, global_alignment, k, metric);
  };

  DistanceArray out(len, Distance::infinity());
  std::size_t chunk_count = 0;
  for (std::size_t begin = 0; begin < len; begin += m, ++chunk_count) {
    const std::size_t owned_end = std::min(begin + m, len);
    const std::size_t chunk_end = std::min(begin + 2 * m, n);
    Rng chunk_rng = rng.derive(chunk_count + 1);

    std::vector<Symbol> chunk_data(
        text.data.begin() + static_cast<std::ptrdiff_t>(begin),
        text.data.begin() + static_cast<std::ptrdiff_t>(chunk_end));
    const IntSequence chunk(std::move(chunk_data), text.max_value);

    std::vector<std::size_t> owned;
    for (std::size_t a : filter_alignments(chunk, pattern, k, chunk_rng))
      if (begin + a < owned_end) owned.push_back(a);
    if (trace) {
      std::vector<std::size_t> global(owned.size());
      for (std::size_t i = 0; i < owned.size(); ++i) global[i] = begin + owned[i];
      trace->chunk_candidates.push_back(std::move(global));
    }
    if (owned.empty()) continue;

    if (!kernel_route) {
      for (std::size_t a : owned) out[begin + a] = verify(begin + a);
      continue;
    }

    std::vector<std::vector<std::size_t>> groups;
    split_by_span(owned, m - ell, groups);
    for (std::vector<std::size_t>& group : groups) {
      const Region region = extract_region(chunk, group, m);
      KernelInstance inst = kernelize(pattern, region.text, report.period, k);

      RegionOutcome outcome;
      outcome.chunk_begin = begin;
      outcome.region_offset = begin + region.offset;
      outcome.region_length = region.text.size();
      outcome.candidates = group.size();
      outcome.p_star_runs = run_count(inst.p_star);
      outcome.t_star_runs = run_count(inst.t_star);
      outcome.p_star_length = inst.p_star.size();
      outcome.t_star_length = inst.t_star.size();

      // The construction always preserves distances; the run budget is a
      // certificate, and instances that blow it are verified directly.
      const bool within_budget =
          outcome.p_star_runs + outcome.t_star_runs <=
              40 * static_cast<std::size_t>(std::max<std::int64_t>(k, 1)) &&
          outcome.t_star_length <= 4 * m && outcome.p_star_length <= 4 * m;
      outcome.used_kernel = within_budget;

      if (within_budget) {
        const DistanceArray kernel_dist = effective_backend(
            rle_encode(inst.t_star), rle_encode(inst.p_star));
        for (std::size_t a : group) {
          const Distance v = kernel_dist[inst.map(a - region.offset)];
          out[begin + a] = !v.is_infinite() && v.value() <= k
                               ? v
                               : Distance::infinity();
        }
      } else {
        for (std::size_t a : group) out[begin + a] = verify(begin + a);
      }
      if (trace) {
        if (trace->keep_instances) outcome.instance = std::move(inst);
        trace->regions.push_back(std::move(outcome));
      }
    }
  }
  if (trace) trace->chunks = chunk_count;
  return out;
}

DistanceArray kapprox_l1(const IntSequence& text, const IntSequence& pattern,
                         std::int64_t k, Rng& rng, const RleBackend& backend,
                         PipelineTrace* trace) {
  return kapprox(text, pattern, k, oracle::Metric::kL1, rng, backend, trace);
}

}  // namespace l1match
