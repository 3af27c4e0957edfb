#include "l1match/counters.hpp"

namespace l1match {

Counters& counters() {
  static Counters instance;
  return instance;
}

CounterSnapshot snapshot_counters() {
  Counters& c = counters();
  return CounterSnapshot{
      c.correlations.load(std::memory_order_relaxed),
      c.block_pairs.load(std::memory_order_relaxed),
      c.kangaroo_jumps.load(std::memory_order_relaxed),
      c.repetitions.load(std::memory_order_relaxed),
  };
}

}  // namespace l1match
