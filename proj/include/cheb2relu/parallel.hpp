#pragma once

#include <cstddef>
#include <functional>

namespace cheb2relu {

/// Runs fn(i) for i in [0, n) on a small worker pool. Worker count is capped
/// by the CHEB2RELU_THREADS environment variable (default: hardware
/// parallelism). Results must be written to index-addressed slots; the order
/// of execution is unspecified.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

} // namespace cheb2relu
