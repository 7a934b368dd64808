#pragma once

#include <cstddef>
#include <functional>

namespace fspectra {

/// Worker count: FSPECTRA_THREADS if set and positive, otherwise the hardware
/// concurrency (at least 1).
std::size_t thread_count();

/// Calls body(i) for i in [0, n). Iterations must write only to slot i of
/// their own output so results do not depend on the worker count.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace fspectra
