#pragma once

#include <cstddef>
#include <functional>

namespace l1match {

// Worker cap: min(hardware threads, L1MATCH_THREADS if set).  Always >= 1.
std::size_t worker_count();

// Runs fn(i) for i in [begin, end) across up to worker_count() threads with a
// static split.  Calls from inside a worker run serially (no nesting).
// Callers must make iterations independent; deterministic results are the
// caller's responsibility (integer merges are order-independent).
void parallel_for(std::size_t begin, std::size_t end,
                  const std::function<void(std::size_t)>& fn);

}  // namespace l1match
