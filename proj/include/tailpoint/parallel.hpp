#pragma once

#include <atomic>
#include <cstdlib>
#include <thread>
#include <vector>

namespace tailpoint {

// Worker count: TAILPOINT_THREADS caps it when set, otherwise the hardware
// concurrency. Always at least 1.
inline unsigned max_threads() {
    unsigned hw = std::thread::hardware_concurrency();
    if (hw == 0) hw = 1;
    if (const char* env = std::getenv("TAILPOINT_THREADS")) {
        long v = std::strtol(env, nullptr, 10);
        if (v >= 1 && static_cast<unsigned long>(v) < hw) hw = static_cast<unsigned>(v);
    }
    return hw;
}

// Runs f(i) for i in [0,n). Each index is claimed exactly once; f must write
// only to its own slot so results are independent of scheduling.
template <typename F>
void parallel_for(std::size_t n, F&& f) {
    unsigned workers = max_threads();
    if (workers <= 1 || n <= 1) {
        for (std::size_t i = 0; i < n; ++i) f(i);
        return;
    }
    if (workers > n) workers = static_cast<unsigned>(n);
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            for (;;) {
                std::size_t i = next.fetch_add(1);
                if (i >= n) return;
                f(i);
            }
        });
    }
    for (auto& t : pool) t.join();
}

}  // namespace tailpoint
