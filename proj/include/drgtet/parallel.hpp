#pragma once

#include <cstddef>
#include <functional>

namespace drgtet {

/// Worker count used by the dense kernels. Defaults to the DRGTET_THREADS
/// environment variable, else std::thread::hardware_concurrency().
std::size_t thread_count();
void set_thread_count(std::size_t n);

/// Runs body(lo, hi) over a partition of [begin, end). Work below min_chunk
/// items per worker runs inline. Results must not depend on the partition.
void parallel_for(std::size_t begin, std::size_t end, std::size_t min_chunk,
                  const std::function<void(std::size_t, std::size_t)>& body);

}  // namespace drgtet
