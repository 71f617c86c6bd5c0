#pragma once

#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace zonal {

// Worker count from ZONAL_STABILITY_THREADS (unset or 0 means hardware concurrency).
int worker_count();

namespace detail {
inline thread_local bool in_parallel_region = false;
}

// Runs f(i) for i in [0, n). Nested calls run serially on the calling thread.
template <class F>
void parallel_for(std::size_t n, F&& f) {
    const std::size_t workers = std::min<std::size_t>(static_cast<std::size_t>(worker_count()), n);
    if (workers <= 1 || detail::in_parallel_region) {
        for (std::size_t i = 0; i < n; ++i)
            f(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto run = [&] {
        detail::in_parallel_region = true;
        for (std::size_t i = next++; i < n; i = next++) {
            try {
                f(i);
            } catch (...) {
                std::lock_guard lock(failure_mutex);
                if (!failure)
                    failure = std::current_exception();
            }
        }
        detail::in_parallel_region = false;
    };
    std::vector<std::jthread> pool;
    pool.reserve(workers - 1);
    for (std::size_t t = 1; t < workers; ++t)
        pool.emplace_back(run);
    run();
    pool.clear();
    if (failure)
        std::rethrow_exception(failure);
}

}  // namespace zonal
