#pragma once

#include <atomic>
#include <cstddef>
#include <functional>
#include <span>
#include <thread>
#include <vector>

namespace relutil {

// Runs fn(0..count-1) across a worker pool. Each index must write only to
// its own output slot; with per-index seed substreams the results are
// identical for any worker count.
inline void parallel_for(std::size_t count, const std::function<void(std::size_t)>& fn) {
    unsigned workers = std::thread::hardware_concurrency();
    if (workers == 0) {
        workers = 1;
    }
    if (workers <= 1 || count <= 1) {
        for (std::size_t i = 0; i < count; ++i) {
            fn(i);
        }
        return;
    }
    if (static_cast<std::size_t>(workers) > count) {
        workers = static_cast<unsigned>(count);
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            while (true) {
                std::size_t i = next.fetch_add(1);
                if (i >= count) {
                    return;
                }
                fn(i);
            }
        });
    }
    for (auto& t : pool) {
        t.join();
    }
}

// Fixed pairwise summation; the reduction order depends only on the slot
// order, never on scheduling.
inline double tree_sum(std::span<const double> v) {
    if (v.empty()) {
        return 0.0;
    }
    if (v.size() == 1) {
        return v[0];
    }
    std::size_t half = v.size() / 2;
    return tree_sum(v.subspan(0, half)) + tree_sum(v.subspan(half));
}

} // namespace relutil
