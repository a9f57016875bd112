#pragma once

#include <cstdlib>
#include <string>
#include <thread>
#include <vector>

namespace meshdiff {

/// Worker count: explicit request, else MESHDIFF_THREADS, else hardware.
inline int resolve_threads(int requested) {
    if (requested > 0) return requested;
    if (const char* env = std::getenv("MESHDIFF_THREADS")) {
        const int v = std::atoi(env);
        if (v > 0) return v;
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? static_cast<int>(hw) : 1;
}

/// Chunked parallel loop over [begin, end). The body must write only to
/// per-index slots so the result is independent of scheduling.
template <typename F>
void parallel_for(int begin, int end, int threads, F&& body) {
    const int count = end - begin;
    threads = std::min(resolve_threads(threads), count);
    if (threads <= 1) {
        for (int i = begin; i < end; ++i) body(i);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(threads);
    const int chunk = (count + threads - 1) / threads;
    for (int t = 0; t < threads; ++t) {
        const int lo = begin + t * chunk;
        const int hi = std::min(end, lo + chunk);
        if (lo >= hi) break;
        pool.emplace_back([lo, hi, &body] {
            for (int i = lo; i < hi; ++i) body(i);
        });
    }
    for (auto& th : pool) th.join();
}

} // namespace meshdiff
