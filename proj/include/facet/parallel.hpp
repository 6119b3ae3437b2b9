#pragma once

#include <atomic>
#include <cstddef>
#include <functional>
#include <thread>
#include <vector>

namespace facet {

// Resolve a --threads style value: 0 means hardware concurrency.
inline unsigned resolve_threads(unsigned requested) {
    if (requested != 0) return requested;
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1u : hw;
}

// Runs fn(begin,end) over fixed-size blocks of [0,n). Blocks are fixed at
// kBlock items regardless of thread count, and workers only write to
// per-index slots, so results are identical for any `threads` value.
inline void parallel_for(std::size_t n, unsigned threads,
                         const std::function<void(std::size_t, std::size_t)>& fn) {
    constexpr std::size_t kBlock = 256;
    threads = resolve_threads(threads);
    if (threads <= 1 || n <= kBlock) {
        if (n > 0) fn(0, n);
        return;
    }
    const std::size_t num_blocks = (n + kBlock - 1) / kBlock;
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (;;) {
            const std::size_t b = next.fetch_add(1);
            if (b >= num_blocks) return;
            const std::size_t begin = b * kBlock;
            const std::size_t end = begin + kBlock < n ? begin + kBlock : n;
            fn(begin, end);
        }
    };
    std::vector<std::thread> pool;
    pool.reserve(threads - 1);
    for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();
}

}  // namespace facet
