#pragma once

#include <atomic>
#include <cstdint>

namespace l1match {

// Global operation counters, read by the bench command and by tests that pin
// work-scaling laws.  Increments are relaxed atomics; totals are exact
// because every site adds a deterministic amount.
struct Counters {
  std::atomic<std::uint64_t> correlations{0};
  std::atomic<std::uint64_t> block_pairs{0};
  std::atomic<std::uint64_t> kangaroo_jumps{0};
  std::atomic<std::uint64_t> repetitions{0};

  void reset() {
    correlations = 0;
    block_pairs = 0;
    kangaroo_jumps = 0;
    repetitions = 0;
  }
};

struct CounterSnapshot {
  std::uint64_t correlations = 0;
  std::uint64_t block_pairs = 0;
  std::uint64_t kangaroo_jumps = 0;
  std::uint64_t repetitions = 0;
};

Counters& counters();
CounterSnapshot snapshot_counters();

}  // namespace l1match
