#pragma once

#include <atomic>
#include <exception>
#include <functional>
#include <mutex>
#include <thread>
#include <vector>

namespace strichartz {

// Runs fn(0), ..., fn(n-1) on up to `workers` threads. Tasks must write their
// results into per-index slots; any reduction happens afterwards in index
// order, so the outcome is identical for every worker count.
inline void parallel_for(std::size_t n, int workers, const std::function<void(std::size_t)>& fn) {
    if (n == 0) return;
    if (workers <= 1 || n == 1) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    const std::size_t nthreads = std::min<std::size_t>(static_cast<std::size_t>(workers), n);
    std::atomic<std::size_t> next{0};
    std::exception_ptr first_error;
    std::mutex error_mutex;
    std::vector<std::thread> pool;
    pool.reserve(nthreads);
    for (std::size_t w = 0; w < nthreads; ++w) {
        pool.emplace_back([&] {
            for (;;) {
                const std::size_t i = next.fetch_add(1);
                if (i >= n) return;
                try {
                    fn(i);
                } catch (...) {
                    std::lock_guard<std::mutex> lock(error_mutex);
                    if (!first_error) first_error = std::current_exception();
                }
            }
        });
    }
    for (auto& t : pool) t.join();
    if (first_error) std::rethrow_exception(first_error);
}

}  // namespace strichartz
