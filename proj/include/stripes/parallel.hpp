#pragma once

#include <cstdlib>
#include <exception>
#include <string>
#include <thread>
#include <utility>
#include <vector>

namespace stripes {

// Worker-thread cap: the STRIPES_THREADS environment variable when it parses
// to a positive integer, otherwise the hardware concurrency (at least 1).
inline int thread_budget() {
    if (const char* env = std::getenv("STRIPES_THREADS")) {
        try {
            const int v = std::stoi(env);
            if (v >= 1) return std::min(v, 256);
        } catch (const std::exception&) {
            // fall through to the hardware default
        }
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(hw);
}

// Runs fn(i) for i in [0, n) across up to `threads` workers (0 = budget).
// Each index is processed exactly once; callers gather results by index, so
// output order is independent of the schedule.  The first exception thrown
// by any worker is rethrown after all workers join.
template <typename Fn>
void parallel_for_index(int n, Fn&& fn, int threads = 0) {
    if (n <= 0) return;
    if (threads <= 0) threads = thread_budget();
    threads = std::min(threads, n);
    if (threads == 1) {
        for (int i = 0; i < n; ++i) fn(i);
        return;
    }
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errors(static_cast<std::size_t>(threads));
    pool.reserve(static_cast<std::size_t>(threads));
    for (int t = 0; t < threads; ++t) {
        pool.emplace_back([&, t]() {
            try {
                for (int i = t; i < n; i += threads) fn(i);
            } catch (...) {
                errors[static_cast<std::size_t>(t)] = std::current_exception();
            }
        });
    }
    for (auto& th : pool) th.join();
    for (const auto& e : errors)
        if (e) std::rethrow_exception(e);
}

} // namespace stripes
