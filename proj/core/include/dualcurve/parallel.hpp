#pragma once

#include <cstddef>
#include <functional>

namespace dualcurve {

/// Worker cap: DUALCURVE_THREADS when set to a positive integer, otherwise
/// the hardware concurrency.
unsigned worker_count();

/// Runs body(i) for i in [0, count). Iterations must not share mutable state.
/// Results are identical for every worker count.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

}  // namespace dualcurve
