#include "l1match/parallel.hpp"

#include <algorithm>
#include <cstdlib>
#include <string>
#include <thread>
#include <vector>

namespace l1match {

namespace {

thread_local bool inside_parallel = false;

std::size_t env_cap() {
  static const std::size_t cap = [] {
    const char* raw = std::getenv("L1MATCH_THREADS");
    if (!raw) return std::size_t{0};
    char* end = nullptr;
    const long v = std::strtol(raw, &end, 10);
    if (end == raw || v < 1) return std::size_t{0};
    return static_cast<std::size_t>(v);
  }();
  return cap;
}

}  // namespace

std::size_t worker_count() {
  std::size_t hw = std::thread::hardware_concurrency();
  if (hw == 0) hw = 1;
  const std::size_t cap = env_cap();
  if (cap > 0) hw = std::min(hw, cap);
  return std::max<std::size_t>(hw, 1);
}

void parallel_for(std::size_t begin, std::size_t end,
                  const std::function<void(std::size_t)>& fn) {
  if (begin >= end) return;
  const std::size_t total = end - begin;
  const std::size_t workers =
      inside_parallel ? 1 : std::min(worker_count(), total);
  if (workers <= 1) {
    for (std::size_t i = begin; i < end; ++i) fn(i);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    const std::size_t lo = begin + total * w / workers;
    const std::size_t hi = begin + total * (w + 1) / workers;
    pool.emplace_back([lo, hi, &fn] {
      inside_parallel = true;
      for (std::size_t i = lo; i < hi; ++i) fn(i);
      inside_parallel = false;
    });
  }
  for (std::thread& t : pool) t.join();
}

}  // namespace l1match
