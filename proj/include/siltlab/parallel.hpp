#pragma once
// Deterministic parallel reduction over Monte-Carlo sample indices.
//
// Samples are split into fixed-size chunks (independent of the thread
// count); each chunk is reduced serially in index order and the chunk
// results are merged in chunk order.  Together with per-sample RNG streams
// this makes every aggregate bit-identical for any --jobs value.

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <cstdlib>
#include <thread>
#include <vector>

namespace siltlab {

inline int resolve_jobs(int requested) {
    if (requested > 0) return requested;
    if (const char* env = std::getenv("SILTLAB_JOBS")) {
        int v = std::atoi(env);
        if (v > 0) return v;
    }
    unsigned hw = std::thread::hardware_concurrency();
    return hw ? int(hw) : 1;
}

// Acc: default-constructible, with merge(const Acc&).
// Fn: void(uint64_t sample_index, Acc&).
template <class Acc, class Fn>
Acc parallel_reduce(uint64_t n, int jobs, Fn&& fn) {
    constexpr uint64_t kChunk = 16384;
    const uint64_t n_chunks = (n + kChunk - 1) / kChunk;
    std::vector<Acc> results(n_chunks);
    std::atomic<uint64_t> next{0};

    auto worker = [&]() {
        for (;;) {
            uint64_t c = next.fetch_add(1, std::memory_order_relaxed);
            if (c >= n_chunks) break;
            Acc acc;
            const uint64_t lo = c * kChunk;
            const uint64_t hi = std::min(n, lo + kChunk);
            for (uint64_t i = lo; i < hi; ++i) fn(i, acc);
            results[c] = std::move(acc);
        }
    };

    int j = std::max(1, resolve_jobs(jobs));
    if (j == 1 || n_chunks <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        int nt = int(std::min<uint64_t>(j, n_chunks));
        pool.reserve(nt);
        for (int k = 0; k < nt; ++k) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }

    Acc total;
    for (auto& r : results) total.merge(r);
    return total;
}

}  // namespace siltlab
