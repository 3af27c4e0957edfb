#include "l1match/oracle.hpp"

#include <cstdlib>

namespace l1match::oracle {

namespace {

void check_lengths(std::size_t n, std::size_t m) {
  if (m > n) throw std::invalid_argument("pattern longer than text");
}

}  // namespace

DistanceArray naive_l1(const IntSequence& text, const IntSequence& pattern) {
  check_lengths(text.size(), pattern.size());
  const std::size_t n = text.size(), m = pattern.size();
  DistanceArray out;
  out.reserve(n - m + 1);
  for (std::size_t i = 0; i + m <= n; ++i) {
    std::int64_t sum = 0;
    for (std::size_t j = 0; j < m; ++j)
      sum += std::llabs(text.data[i + j] - pattern.data[j]);
    out.push_back(Distance::finite(sum));
  }
  return out;
}

DistanceArray naive_l1(const IntSequence& text, const IntSequence& pattern,
                       std::int64_t k) {
  if (k < 0) throw std::invalid_argument("k must be >= 0");
  check_lengths(text.size(), pattern.size());
  const std::size_t n = text.size(), m = pattern.size();
  DistanceArray out;
  out.reserve(n - m + 1);
  for (std::size_t i = 0; i + m <= n; ++i) {
    std::int64_t sum = 0;
    bool over = false;
    for (std::size_t j = 0; j < m; ++j) {
      sum += std::llabs(text.data[i + j] - pattern.data[j]);
      if (sum > k) {
        over = true;
        break;
      }
    }
    out.push_back(over ? Distance::infinity() : Distance::finite(sum));
  }
  return out;
}

DistanceArray naive_ham(const IntSequence& text, const IntSequence& pattern) {
  check_lengths(text.size(), pattern.size());
  const std::size_t n = text.size(), m = pattern.size();
  DistanceArray out;
  out.reserve(n - m + 1);
  for (std::size_t i = 0; i + m <= n; ++i) {
    std::int64_t count = 0;
    for (std::size_t j = 0; j < m; ++j)
      count += text.data[i + j] != pattern.data[j] ? 1 : 0;
    out.push_back(Distance::finite(count));
  }
  return out;
}

DistanceArray naive_wild(const WildcardSequence& text,
                         const WildcardSequence& pattern, Metric metric) {
  check_lengths(text.size(), pattern.size());
  const std::size_t n = text.size(), m = pattern.size();
  DistanceArray out;
  out.reserve(n - m + 1);
  for (std::size_t i = 0; i + m <= n; ++i) {
    std::int64_t sum = 0;
    for (std::size_t j = 0; j < m; ++j) {
      const MaybeSymbol& a = text.data[i + j];
      const MaybeSymbol& b = pattern.data[j];
      if (!a || !b) continue;
      if (metric == Metric::kL1) {
        sum += std::llabs(*a - *b);
      } else {
        sum += *a != *b ? 1 : 0;
      }
    }
    out.push_back(Distance::finite(sum));
  }
  return out;
}

}  // namespace l1match::oracle
