#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "l1match/oracle.hpp"
#include "l1match/rng.hpp"
#include "l1match/seq.hpp"

namespace l1match {

// Outcome of the pattern period probe.
struct PeriodReport {
  enum class Case { kNoSmallPeriod, kSmallPeriod };
  Case period_case = Case::kNoSmallPeriod;
  std::int64_t period = 0;        // minimal accepted shift; 0 when none
  std::vector<double> estimates;  // estimate for shift l at index l-1
};

// Pattern and candidate text region rearranged by residue class modulo the
// period into column-major grids of shared height; the second half of
// t_star repeats the region shifted up by one row so that every original
// alignment i maps to the single kernel alignment map(i).
struct KernelInstance {
  WildcardSequence p_star;
  WildcardSequence t_star;
  std::int64_t period = 1;
  std::size_t column_height = 1;
  std::vector<std::size_t> candidate_set;  // region alignments covered

  std::size_t map(std::size_t alignment) const {
    const std::size_t ell = static_cast<std::size_t>(period);
    return (alignment % ell) * column_height + alignment / ell;
  }
};

// Per-region record of how the pipeline handled a group of candidates.
struct RegionOutcome {
  std::size_t chunk_begin = 0;     // first alignment owned by the chunk
  std::size_t region_offset = 0;   // global text offset of the region
  std::size_t region_length = 0;
  std::size_t candidates = 0;
  bool used_kernel = false;        // false: kangaroo verification
  std::size_t p_star_runs = 0;
  std::size_t t_star_runs = 0;
  std::size_t p_star_length = 0;
  std::size_t t_star_length = 0;
  std::optional<KernelInstance> instance;  // kept when tracing
};

struct PipelineTrace {
  bool keep_instances = false;  // set before the run to retain kernels
  PeriodReport report;
  bool exact_fallback = false;  // k >= m: direct exact computation
  std::size_t chunks = 0;
  std::vector<RegionOutcome> regions;
  std::vector<std::vector<std::size_t>> chunk_candidates;  // global indices
};

PeriodReport classify_period(const IntSequence& pattern, std::int64_t k,
                             Rng& rng);

// Candidate alignments of pattern inside a chunk of length <= 2m, kept when
// the projected Hamming estimate is at most (4/3)k.
std::vector<std::size_t> filter_alignments(const IntSequence& chunk,
                                           const IntSequence& pattern,
                                           std::int64_t k, Rng& rng);

struct Region {
  IntSequence text;
  std::size_t offset = 0;  // alignment/text offset of region start in chunk
};

Region extract_region(const IntSequence& chunk,
                      const std::vector<std::size_t>& candidates,
                      std::size_t pattern_length);

KernelInstance kernelize(const IntSequence& pattern, const IntSequence& region,
                         std::int64_t period, std::int64_t k);

// Backend computing an exact distance array on RLE wildcard instances.
using RleBackend =
    std::function<DistanceArray(const RleSequence&, const RleSequence&)>;

DistanceArray kapprox(const IntSequence& text, const IntSequence& pattern,
                      std::int64_t k, oracle::Metric metric, Rng& rng,
                      const RleBackend& backend = {},
                      PipelineTrace* trace = nullptr);

DistanceArray kapprox_l1(const IntSequence& text, const IntSequence& pattern,
                         std::int64_t k, Rng& rng,
                         const RleBackend& backend = {},
                         PipelineTrace* trace = nullptr);

}  // namespace l1match
