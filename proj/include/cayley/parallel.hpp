#pragma once

#include <cstdint>
#include <functional>
#include <thread>
#include <vector>

namespace cayley {

inline int resolve_threads(int requested) {
    if (requested > 0) return requested;
    unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(hw);
}

/// Run fn(i) for i in [0, count) on up to `threads` workers.
///
/// Work is dealt in fixed index ranges so the partition depends only on
/// `count`, never on the thread count; callers that combine per-index
/// results in index order therefore produce thread-count-independent
/// output. Exceptions from workers are rethrown on the calling thread.
template <typename Fn>
void parallel_for(std::uint64_t count, int threads, Fn&& fn) {
    threads = resolve_threads(threads);
    if (count == 0) return;
    if (threads <= 1 || count == 1) {
        for (std::uint64_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::uint64_t nworkers = std::min<std::uint64_t>(static_cast<std::uint64_t>(threads), count);
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errs(nworkers);
    pool.reserve(nworkers);
    for (std::uint64_t w = 0; w < nworkers; ++w) {
        pool.emplace_back([&, w] {
            std::uint64_t begin = count * w / nworkers;
            std::uint64_t end = count * (w + 1) / nworkers;
            try {
                for (std::uint64_t i = begin; i < end; ++i) fn(i);
            } catch (...) {
                errs[w] = std::current_exception();
            }
        });
    }
    for (auto& t : pool) t.join();
    for (auto& e : errs)
        if (e) std::rethrow_exception(e);
}

} // namespace cayley
