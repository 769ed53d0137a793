#pragma once

#include <cstddef>
#include <functional>
#include <thread>
#include <vector>

namespace srso3 {

// Run fn(begin, end) over `jobs` contiguous partitions of [0, total).
// Partitions are fixed by (total, jobs) alone, so results written to
// per-index slots merge deterministically regardless of scheduling.
inline void run_partitioned(std::size_t total, int jobs,
                            const std::function<void(std::size_t, std::size_t)>& fn) {
    if (total == 0) return;
    const std::size_t nj =
        (jobs <= 1) ? 1 : std::min<std::size_t>(static_cast<std::size_t>(jobs), total);
    if (nj == 1) {
        fn(0, total);
        return;
    }
    std::vector<std::thread> threads;
    threads.reserve(nj);
    const std::size_t chunk = (total + nj - 1) / nj;
    for (std::size_t k = 0; k < nj; ++k) {
        const std::size_t b = k * chunk;
        const std::size_t e = std::min(total, b + chunk);
        if (b >= e) break;
        threads.emplace_back([&fn, b, e] { fn(b, e); });
    }
    for (auto& t : threads) t.join();
}

} // namespace srso3
