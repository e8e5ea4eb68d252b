#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace cardbalance {

/// Resolves a --jobs value: 0 means one worker per hardware thread.
inline int resolve_jobs(int jobs)
{
    if (jobs > 0) {
        return jobs;
    }
    return static_cast<int>(std::max(1U, std::thread::hardware_concurrency()));
}

/// Calls fn(i) for every i in [0, n) on up to `jobs` threads. Work is handed
/// out dynamically, so fn must write only to slot i of its outputs. The
/// first exception thrown by any call is rethrown after all workers stop.
template <typename Fn>
void parallel_for(std::size_t n, int jobs, Fn&& fn)
{
    const auto workers = static_cast<std::size_t>(std::min<std::size_t>(resolve_jobs(jobs), n));
    if (workers <= 1) {
        for (std::size_t i = 0; i < n; ++i) {
            fn(i);
        }
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    auto work = [&] {
        for (std::size_t i = next++; i < n; i = next++) {
            try {
                fn(i);
            } catch (...) {
                std::lock_guard lock(error_mutex);
                if (!error) {
                    error = std::current_exception();
                }
                next = n;
            }
        }
    };
    std::vector<std::thread> pool;
    pool.reserve(workers - 1);
    for (std::size_t w = 1; w < workers; ++w) {
        pool.emplace_back(work);
    }
    work();
    for (auto& t : pool) {
        t.join();
    }
    if (error) {
        std::rethrow_exception(error);
    }
}

} // namespace cardbalance
