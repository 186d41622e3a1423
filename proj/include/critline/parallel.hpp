#pragma once

// Deterministic block-partitioned parallel loop.  Each index writes only its
// own output slot, so results are identical to the sequential run regardless
// of worker count.

#include <cstddef>
#include <thread>
#include <vector>

namespace critline {

inline unsigned resolve_workers(unsigned requested) {
    if (requested != 0) return requested;
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : hw;
}

template <typename F>
void parallel_for(std::size_t count, unsigned workers, F&& body) {
    workers = resolve_workers(workers);
    if (count == 0) return;
    if (workers <= 1 || count < 2) {
        for (std::size_t i = 0; i < count; ++i) body(i);
        return;
    }
    const std::size_t n_threads = std::min<std::size_t>(workers, count);
    std::vector<std::thread> threads;
    threads.reserve(n_threads);
    const std::size_t chunk = (count + n_threads - 1) / n_threads;
    for (std::size_t w = 0; w < n_threads; ++w) {
        const std::size_t lo = w * chunk;
        const std::size_t hi = std::min(count, lo + chunk);
        if (lo >= hi) break;
        threads.emplace_back([lo, hi, &body] {
            for (std::size_t i = lo; i < hi; ++i) body(i);
        });
    }
    for (auto& t : threads) t.join();
}

}  // namespace critline
