#include "l1match/kangaroo.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "l1match/counters.hpp"

namespace l1match {

namespace {

// Suffix array by rank doubling; comparisons sort (rank, next rank) pairs.
std::vector<std::uint32_t> suffix_array(const std::vector<Symbol>& s) {
  const std::size_t n = s.size();
  std::vector<std::uint32_t> order(n), rank(n), next_rank(n);
  std::iota(order.begin(), order.end(), 0U);
  std::sort(order.begin(), order.end(),
            [&](std::uint32_t a, std::uint32_t b) { return s[a] < s[b]; });
  rank[order[0]] = 0;
  for (std::size_t i = 1; i < n; ++i)
    rank[order[i]] = rank[order[i - 1]] + (s[order[i]] != s[order[i - 1]]);
  for (std::size_t width = 1; width < n; width *= 2) {
    auto key = [&](std::uint32_t pos) {
      const std::uint32_t second =
          pos + width < n ? rank[pos + width] + 1 : 0;
      return std::pair<std::uint32_t, std::uint32_t>(rank[pos], second);
    };
    std::sort(order.begin(), order.end(),
              [&](std::uint32_t a, std::uint32_t b) { return key(a) < key(b); });
    next_rank[order[0]] = 0;
    for (std::size_t i = 1; i < n; ++i)
      next_rank[order[i]] =
          next_rank[order[i - 1]] + (key(order[i]) != key(order[i - 1]));
    rank.swap(next_rank);
    if (rank[order[n - 1]] == n - 1) break;
  }
  return order;
}

// Kasai: lcp[r] = LCP of suffixes ranked r-1 and r; lcp[0] = 0.
std::vector<std::uint32_t> adjacent_lcp(const std::vector<Symbol>& s,
                                        const std::vector<std::uint32_t>& sa,
                                        const std::vector<std::uint32_t>& rank) {
  const std::size_t n = s.size();
  std::vector<std::uint32_t> lcp(n, 0);
  std::size_t h = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (rank[i] == 0) {
      h = 0;
      continue;
    }
    const std::size_t j = sa[rank[i] - 1];
    while (i + h < n && j + h < n && s[i + h] == s[j + h]) ++h;
    lcp[rank[i]] = static_cast<std::uint32_t>(h);
    if (h > 0) --h;
  }
  return lcp;
}

}  // namespace

LcpIndex::LcpIndex(const IntSequence& text, const IntSequence& pattern)
    : text_length_(text.size()), pattern_length_(pattern.size()) {
  std::vector<Symbol> joint;
  joint.reserve(text_length_ + pattern_length_ + 1);
  joint.insert(joint.end(), text.data.begin(), text.data.end());
  joint.push_back(-1);  // below every symbol; never matches
  joint.insert(joint.end(), pattern.data.begin(), pattern.data.end());

  const std::size_t n = joint.size();
  const std::vector<std::uint32_t> sa = suffix_array(joint);
  rank_.assign(n, 0);
  for (std::size_t r = 0; r < n; ++r) rank_[sa[r]] = static_cast<std::uint32_t>(r);
  const std::vector<std::uint32_t> lcp = adjacent_lcp(joint, sa, rank_);

  floor_log_.assign(n + 1, 0);
  for (std::size_t i = 2; i <= n; ++i) floor_log_[i] = floor_log_[i / 2] + 1;
  const std::size_t levels = floor_log_[n] + 1;
  table_.assign(levels, {});
  table_[0].assign(lcp.begin(), lcp.end());
  for (std::size_t level = 1; level < levels; ++level) {
    const std::size_t span = std::size_t{1} << level;
    table_[level].resize(n + 1 - span);
    for (std::size_t i = 0; i + span <= n; ++i)
      table_[level][i] = std::min(table_[level - 1][i],
                                  table_[level - 1][i + span / 2]);
  }
}

std::size_t LcpIndex::range_min(std::size_t lo, std::size_t hi) const {
  const std::size_t level = floor_log_[hi - lo];
  const std::size_t span = std::size_t{1} << level;
  return std::min(table_[level][lo], table_[level][hi - span]);
}

std::size_t LcpIndex::lcp(std::size_t text_pos, std::size_t pattern_pos) const {
  if (text_pos >= text_length_ || pattern_pos >= pattern_length_)
    throw std::out_of_range("lcp position out of range");
  std::size_t a = rank_[text_pos];
  std::size_t b = rank_[text_length_ + 1 + pattern_pos];
  if (a > b) std::swap(a, b);
  return range_min(a + 1, b + 1);
}

LcpIndex build_lcp(const IntSequence& text, const IntSequence& pattern) {
  return LcpIndex(text, pattern);
}

Distance verify_alignment(const LcpIndex& index, const IntSequence& text,
                          const IntSequence& pattern, std::size_t alignment,
                          std::int64_t k, oracle::Metric metric) {
  const std::size_t n = text.size(), m = pattern.size();
  if (index.text_length() != n || index.pattern_length() != m)
    throw std::invalid_argument("index built for different lengths");
  if (m > n || alignment > n - m)
    throw std::out_of_range("alignment out of range");
  if (k < 0) throw std::invalid_argument("k must be >= 0");
  std::int64_t sum = 0;
  std::size_t j = 0;
  while (j < m) {
    counters().kangaroo_jumps.fetch_add(1, std::memory_order_relaxed);
    j += index.lcp(alignment + j, j);
    if (j >= m) break;
    sum += metric == oracle::Metric::kL1
               ? std::abs(text.data[alignment + j] - pattern.data[j])
               : 1;
    if (sum > k) return Distance::infinity();
    ++j;
  }
  return Distance::finite(sum);
}

}  // namespace l1match
