#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace coopsearch::detail {

inline unsigned resolve_workers(unsigned requested) {
    if (requested > 0) return requested;
    return std::max(1u, std::thread::hardware_concurrency());
}

// Runs fn(worker, chunk) for every chunk in [0, chunks). Chunks are claimed
// dynamically, so callers must make per-chunk results independent of which
// worker ran them.
template <class Fn>
void parallel_chunks(std::size_t chunks, unsigned workers, Fn&& fn) {
    workers = static_cast<unsigned>(std::min<std::size_t>(resolve_workers(workers), std::max<std::size_t>(chunks, 1)));
    if (workers <= 1) {
        for (std::size_t c = 0; c < chunks; ++c) fn(0u, c);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    {
        std::vector<std::jthread> pool;
        pool.reserve(workers);
        for (unsigned w = 0; w < workers; ++w) {
            pool.emplace_back([&, w] {
                try {
                    for (std::size_t c = next++; c < chunks; c = next++) fn(w, c);
                } catch (...) {
                    std::lock_guard lock(failure_mutex);
                    if (!failure) failure = std::current_exception();
                    next = chunks;
                }
            });
        }
    }
    if (failure) std::rethrow_exception(failure);
}

}  // namespace coopsearch::detail
