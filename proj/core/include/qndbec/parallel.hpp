#pragma once

#include <cstddef>
#include <functional>

namespace qndbec {

/// Worker count from QNDBEC_WORKERS, else the hardware concurrency (>= 1).
unsigned default_workers();

/// Runs body(i) for i in [0, n) on up to `workers` threads (0 = default).
/// Each index is claimed exactly once; results should be written into
/// pre-sized slots by index. The first exception thrown is rethrown.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body,
                  unsigned workers = 0);

}  // namespace qndbec
