#pragma once

#include <algorithm>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace damt {

// Runs f(i) for i in [begin, end) on up to `workers` threads.
// The index range is split into contiguous chunks, one per worker, so each
// index is processed by exactly one thread and results are identical for any
// worker count as long as f writes only to position i.
template <typename F>
void parallel_for(std::size_t begin, std::size_t end, int workers, F&& f) {
    const std::size_t count = end > begin ? end - begin : 0;
    if (count == 0) return;
    const std::size_t w =
        std::min<std::size_t>(std::max(workers, 1), count);
    if (w == 1) {
        for (std::size_t i = begin; i < end; ++i) f(i);
        return;
    }
    const std::size_t chunk = (count + w - 1) / w;
    std::vector<std::thread> threads;
    threads.reserve(w - 1);
    std::exception_ptr error;
    std::mutex error_mutex;
    auto run = [&](std::size_t lo, std::size_t hi) {
        try {
            for (std::size_t i = lo; i < hi; ++i) f(i);
        } catch (...) {
            std::lock_guard<std::mutex> lock(error_mutex);
            if (!error) error = std::current_exception();
        }
    };
    for (std::size_t k = 1; k < w; ++k) {
        const std::size_t lo = begin + k * chunk;
        const std::size_t hi = std::min(end, lo + chunk);
        if (lo >= hi) break;
        threads.emplace_back(run, lo, hi);
    }
    run(begin, std::min(end, begin + chunk));
    for (auto& t : threads) t.join();
    if (error) std::rethrow_exception(error);
}

}  // namespace damt
