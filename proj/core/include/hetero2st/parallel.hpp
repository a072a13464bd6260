#pragma once

#include <cstddef>
#include <functional>

namespace hetero2st {

/// Maximum worker threads: HETERO2ST_THREADS when set and positive, otherwise
/// the hardware concurrency.
int max_threads();

/// Run fn(i) for i in [0, count). Work items must be independent and write
/// only to their own output slots; under that contract the result is
/// identical for any thread count. Nested calls degrade to serial execution
/// so callers can parallelize at whichever level is outermost.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& fn);

}  // namespace hetero2st
