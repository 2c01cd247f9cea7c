#pragma once
// ============================================================================
// Deterministic parallel-for.
//
// Work items write into pre-sized per-index slots and reductions happen in
// fixed index order after the workers join, so the result is bit-identical
// regardless of the worker count.  The worker count comes from --threads /
// SYMSTRI_THREADS and defaults to the hardware concurrency.
// ============================================================================

#include <atomic>
#include <cstdlib>
#include <string>
#include <thread>
#include <vector>

namespace symstri {

inline int& thread_cap() {
    static int cap = 0; // 0 = unset -> hardware concurrency
    return cap;
}

inline void set_thread_cap(int n) { thread_cap() = n; }

inline int effective_threads(std::size_t n_items) {
    int cap = thread_cap();
    if (cap <= 0) {
        const char* env = std::getenv("SYMSTRI_THREADS");
        if (env != nullptr) cap = std::atoi(env);
    }
    if (cap <= 0) cap = static_cast<int>(std::thread::hardware_concurrency());
    if (cap <= 0) cap = 1;
    if (static_cast<std::size_t>(cap) > n_items) cap = static_cast<int>(n_items);
    return cap < 1 ? 1 : cap;
}

/** Runs fn(i) for i in [0, n); fn must only write state owned by index i. */
template <typename Fn>
void parallel_for(std::size_t n, Fn&& fn) {
    if (n == 0) return;
    int workers = effective_threads(n);
    if (workers == 1) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    for (int w = 0; w < workers; ++w) {
        pool.emplace_back([&]() {
            for (;;) {
                std::size_t i = next.fetch_add(1);
                if (i >= n) break;
                fn(i);
            }
        });
    }
    for (auto& t : pool) t.join();
}

} // namespace symstri
