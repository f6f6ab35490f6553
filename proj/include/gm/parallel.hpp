#pragma once

#include <cstddef>
#include <functional>

namespace gm {

/// Worker count used by grid sweeps and oracle restarts (0 = hardware concurrency).
void set_worker_threads(unsigned n) noexcept;
unsigned worker_threads() noexcept;

/**
 * Runs body(i) for i in [0, count) on up to worker_threads() threads. Each
 * index is processed exactly once; callers write into per-index slots and
 * reduce afterwards, so results do not depend on the thread count.
 */
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

} // namespace gm
