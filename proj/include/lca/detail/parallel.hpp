#pragma once

// Deterministic parallel map-reduce. Work is always split into a fixed number
// of blocks and partial results are combined in block order, so results are
// bit-identical regardless of how many worker threads run (LCA_THREADS caps
// the pool size).

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <thread>
#include <vector>

namespace lca {

inline int max_threads() {
    if (const char* env = std::getenv("LCA_THREADS")) {
        int v = std::atoi(env);
        if (v >= 1) return v;
    }
    unsigned hw = std::thread::hardware_concurrency();
    return hw ? (int)hw : 1;
}

// sum of block_fn(begin, end) over [0, n) split into `blocks` contiguous blocks
template <class T, class BlockFn>
T parallel_block_sum(std::size_t n, BlockFn&& block_fn, int blocks = 64) {
    if (n == 0) return T{};
    blocks = std::min<std::size_t>(blocks, n);
    std::vector<T> partial(blocks);
    const int nthreads = std::min(max_threads(), blocks);
    std::atomic<int> next{0};
    auto worker = [&] {
        for (;;) {
            int b = next.fetch_add(1);
            if (b >= blocks) break;
            std::size_t lo = n * b / blocks, hi = n * (b + 1) / blocks;
            partial[b] = block_fn(lo, hi);
        }
    };
    if (nthreads <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (int t = 0; t < nthreads; ++t) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }
    T acc{};
    for (auto& p : partial) acc += p;
    return acc;
}

}  // namespace lca
