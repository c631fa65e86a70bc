#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdlib>
#include <string>
#include <thread>
#include <vector>

namespace psep {

/// Worker count from PSEP_THREADS, else hardware concurrency.
inline unsigned thread_count() {
    if (const char* env = std::getenv("PSEP_THREADS")) {
        try {
            int n = std::stoi(env);
            if (n > 0) return static_cast<unsigned>(n);
        } catch (...) {
        }
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

/// Runs body(chunk) for chunk in [0, chunks). Chunks are the unit of
/// reproducibility: callers write into per-chunk slots and merge by index,
/// so results do not depend on the worker count.
template <typename Body>
void parallel_chunks(std::size_t chunks, Body&& body) {
    const std::size_t workers = std::min<std::size_t>(thread_count(), chunks);
    if (workers <= 1) {
        for (std::size_t c = 0; c < chunks; ++c) body(c);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
        pool.emplace_back([&, w] {
            for (std::size_t c = w; c < chunks; c += workers) body(c);
        });
    }
    for (auto& t : pool) t.join();
}

}  // namespace psep
