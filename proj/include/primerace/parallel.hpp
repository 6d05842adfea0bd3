#pragma once

#include <atomic>
#include <cstddef>
#include <functional>
#include <mutex>
#include <thread>
#include <vector>

namespace primerace {

// Global worker cap; 0 means "use the hardware count".  Results never depend
// on the cap because work is always split into index-addressed chunks.
inline unsigned& thread_cap() {
    static unsigned cap = 0;
    return cap;
}

inline unsigned effective_threads(std::size_t nchunks) {
    unsigned hw = std::thread::hardware_concurrency();
    if (hw == 0) hw = 1;
    unsigned cap = thread_cap();
    if (cap != 0 && cap < hw) hw = cap;
    if (nchunks < hw) hw = static_cast<unsigned>(nchunks);
    return hw == 0 ? 1 : hw;
}

// Runs fn(chunk) for chunk = 0..nchunks-1 on a small pool.  fn must only
// write to chunk-owned state.
inline void parallel_chunks(std::size_t nchunks, const std::function<void(std::size_t)>& fn) {
    unsigned nthreads = effective_threads(nchunks);
    if (nthreads <= 1) {
        for (std::size_t i = 0; i < nchunks; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    pool.reserve(nthreads);
    std::exception_ptr fail;
    std::mutex fail_mx;
    for (unsigned t = 0; t < nthreads; ++t) {
        pool.emplace_back([&] {
            for (;;) {
                std::size_t i = next.fetch_add(1);
                if (i >= nchunks) return;
                try {
                    fn(i);
                } catch (...) {
                    std::lock_guard<std::mutex> lk(fail_mx);
                    if (!fail) fail = std::current_exception();
                    return;
                }
            }
        });
    }
    for (auto& th : pool) th.join();
    if (fail) std::rethrow_exception(fail);
}

}  // namespace primerace
