#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <thread>
#include <vector>

namespace adbsde::detail {

/// Runs fn(chunk) for every chunk in [0, n_chunks) on up to `workers`
/// threads. Chunks are claimed dynamically; callers write per-chunk results
/// into pre-sized slots so the assembled output is order-independent.
template <typename Fn>
void for_each_chunk(std::size_t n_chunks, unsigned workers, Fn&& fn) {
    const unsigned n_threads =
        static_cast<unsigned>(std::min<std::size_t>(std::max(1u, workers), n_chunks));
    if (n_threads <= 1) {
        for (std::size_t c = 0; c < n_chunks; ++c) fn(c);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    pool.reserve(n_threads);
    for (unsigned t = 0; t < n_threads; ++t) {
        pool.emplace_back([&] {
            for (std::size_t c = next.fetch_add(1); c < n_chunks; c = next.fetch_add(1)) fn(c);
        });
    }
    for (auto& th : pool) th.join();
}

}  // namespace adbsde::detail
