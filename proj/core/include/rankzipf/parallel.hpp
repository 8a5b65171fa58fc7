#pragma once

#include <cstddef>
#include <functional>

namespace rankzipf {

// Cap on worker threads for internal parallel loops. Defaults to the
// RANKZIPF_THREADS environment variable, else hardware concurrency.
std::size_t max_threads();
void set_max_threads(std::size_t n);

// Runs body(i) for i in [0, count). Each index is handled exactly once;
// callers write results into per-index slots so output order is fixed.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

}  // namespace rankzipf
