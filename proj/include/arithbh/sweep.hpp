#pragma once

#include <cstddef>
#include <functional>

namespace arithbh {

/// Worker count: `requested` when nonzero, else ARITHBH_THREADS, else the
/// available hardware parallelism.
std::size_t resolve_threads(std::size_t requested = 0);

/// Calls body(i) for every i in [0, count) on a work-stealing pool. Each call
/// must write only to slot i of its output, so results do not depend on the
/// schedule.
void parallel_cells(std::size_t count, const std::function<void(std::size_t)>& body,
                    std::size_t threads = 0);

}  // namespace arithbh
