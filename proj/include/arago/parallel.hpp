#pragma once

#include <cstddef>
#include <functional>

namespace arago {

// Runs fn(i) for i in [0, n) across up to `threads` workers (0 = hardware
// count) in fixed contiguous chunks. Every index writes only its own result
// slot, so the output is bit-identical to the serial loop for any thread
// count.
void parallel_index_for(std::size_t n, const std::function<void(std::size_t)>& fn,
                        unsigned threads = 0);

}  // namespace arago
