#pragma once

#include <cstddef>
#include <functional>

namespace clonal {

/// Worker cap from CLONAL_EVOLVE_THREADS; 0 (the default) means sequential.
std::size_t worker_count();

/// Calls fn(i) for i in [0, n). Indices are split into contiguous blocks
/// across worker_count() threads; fn must only write to slots owned by i,
/// which keeps results independent of the thread count.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

} // namespace clonal
