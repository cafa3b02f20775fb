#pragma once

#include <cstddef>
#include <functional>

namespace nonlocal {

/// Worker cap used by parallel_for; 0 means hardware concurrency.
void set_thread_count(unsigned n);
unsigned thread_count();

/// Splits [0, n) into contiguous chunks, one per worker, and runs body(begin, end)
/// on each. Results must not depend on the split.
void parallel_for(std::size_t n, const std::function<void(std::size_t, std::size_t)>& body);

}  // namespace nonlocal
