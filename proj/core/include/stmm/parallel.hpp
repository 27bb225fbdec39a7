#pragma once

#include <cstddef>
#include <functional>

namespace stmm {

// Worker count used by parallel_for. 0 selects hardware_concurrency.
void set_thread_count(unsigned n);
unsigned thread_count();

// Runs body(i) for i in [0, n). Items are split into contiguous blocks, one
// per worker. Callers write results by index, so output never depends on
// scheduling.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace stmm
