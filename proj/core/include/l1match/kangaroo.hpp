#pragma once

#include <cstdint>
#include <vector>

#include "l1match/oracle.hpp"
#include "l1match/seq.hpp"

namespace l1match {

// Constant-time longest-common-prefix queries between suffixes of a text
// and suffixes of a pattern, built on a suffix array of text # pattern
// (separator below the symbol range) plus a sparse-table range minimum.
class LcpIndex {
 public:
  LcpIndex(const IntSequence& text, const IntSequence& pattern);

  // Length of the longest common prefix of text[text_pos..] and
  // pattern[pattern_pos..].
  std::size_t lcp(std::size_t text_pos, std::size_t pattern_pos) const;

  std::size_t text_length() const { return text_length_; }
  std::size_t pattern_length() const { return pattern_length_; }

 private:
  std::size_t range_min(std::size_t lo, std::size_t hi) const;

  std::size_t text_length_ = 0;
  std::size_t pattern_length_ = 0;
  std::vector<std::uint32_t> rank_;               // joint position -> SA rank
  std::vector<std::vector<std::uint32_t>> table_; // sparse table over LCPs
  std::vector<std::uint32_t> floor_log_;
};

LcpIndex build_lcp(const IntSequence& text, const IntSequence& pattern);

// Exact window distance at alignment i, computed by jumping between
// mismatches with lcp queries; returns infinity as soon as the running
// sum exceeds k. At most min(m, k+1) + 1 jumps per call.
Distance verify_alignment(const LcpIndex& index, const IntSequence& text,
                          const IntSequence& pattern, std::size_t alignment,
                          std::int64_t k,
                          oracle::Metric metric = oracle::Metric::kL1);

}  // namespace l1match
