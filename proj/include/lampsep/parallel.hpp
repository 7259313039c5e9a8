#pragma once

#include <algorithm>
#include <cstddef>
#include <functional>
#include <thread>
#include <vector>

namespace lampsep {

// Splits [0, n) into contiguous chunks, at most one per requested job, and
// runs fn(begin, end, worker_index) on each chunk, possibly concurrently.
// The partition depends only on n and jobs — never on thread scheduling —
// so workers that write to per-worker slots and merge associatively produce
// output independent of the worker count.
inline void parallel_ranges(
    std::size_t n, unsigned jobs,
    const std::function<void(std::size_t, std::size_t, unsigned)>& fn) {
    if (n == 0) return;
    std::size_t workers = std::max<unsigned>(jobs, 1);
    workers = std::min(workers, n);
    if (workers == 1) {
        fn(0, n, 0);
        return;
    }
    const std::size_t chunk = (n + workers - 1) / workers;
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
        const std::size_t begin = w * chunk;
        const std::size_t end = std::min(n, begin + chunk);
        if (begin >= end) break;
        pool.emplace_back(fn, begin, end, static_cast<unsigned>(w));
    }
    for (auto& t : pool) t.join();
}

} // namespace lampsep
