#pragma once

#include <cstddef>
#include <functional>

namespace jumpfall {

// Runs body(i) for every i in [0, count) on up to `workers` threads. Indices
// are handed out in ascending order; the first exception thrown by any body
// is rethrown after all threads have joined.
void parallel_for(std::size_t count, int workers, const std::function<void(std::size_t)>& body);

}  // namespace jumpfall
