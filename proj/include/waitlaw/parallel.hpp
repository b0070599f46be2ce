#pragma once

#include <cstdint>
#include <exception>
#include <mutex>
#include <stdexcept>
#include <thread>
#include <vector>

namespace waitlaw {

// Static block partition of [0, count) over `threads` workers. Work items are
// seeded per index, so results do not depend on the degree of parallelism.
template <class Fn>
void parallel_for(std::int64_t count, int threads, Fn&& fn) {
    if (count < 0) throw std::invalid_argument("parallel_for: negative count");
    if (threads < 1) threads = 1;
    if (threads == 1 || count < 2) {
        for (std::int64_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::vector<std::thread> pool;
    std::exception_ptr first_error;
    std::mutex error_mutex;
    std::int64_t chunk = (count + threads - 1) / threads;
    for (int w = 0; w < threads; ++w) {
        std::int64_t lo = w * chunk;
        std::int64_t hi = std::min(count, lo + chunk);
        if (lo >= hi) break;
        pool.emplace_back([&, lo, hi] {
            try {
                for (std::int64_t i = lo; i < hi; ++i) fn(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!first_error) first_error = std::current_exception();
            }
        });
    }
    for (auto& t : pool) t.join();
    if (first_error) std::rethrow_exception(first_error);
}

inline int default_threads() {
    unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(hw);
}

} // namespace waitlaw
