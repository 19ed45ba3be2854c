#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdlib>
#include <functional>
#include <thread>
#include <vector>

namespace kernmink {

/// Worker cap from KERNMINK_THREADS; 0 or unset means hardware concurrency.
inline unsigned worker_threads() {
    if (const char* env = std::getenv("KERNMINK_THREADS")) {
        char* end = nullptr;
        const long v = std::strtol(env, &end, 10);
        if (end != env && v > 0) return static_cast<unsigned>(v);
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw ? hw : 1;
}

/// Runs fn(begin, end) over disjoint contiguous blocks of [0, count).
/// Callers write disjoint output ranges, so the result is identical to a
/// sequential pass regardless of the thread count.
inline void parallel_for_blocks(std::size_t count,
                                const std::function<void(std::size_t, std::size_t)>& fn) {
    const std::size_t workers = std::min<std::size_t>(worker_threads(), count);
    if (workers <= 1 || count < 2048) {
        fn(0, count);
        return;
    }
    const std::size_t chunk = (count + workers - 1) / workers;
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
        const std::size_t begin = w * chunk;
        const std::size_t end = std::min(count, begin + chunk);
        if (begin >= end) break;
        pool.emplace_back([begin, end, &fn] { fn(begin, end); });
    }
    for (auto& t : pool) t.join();
}

} // namespace kernmink
