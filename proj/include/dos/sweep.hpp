#pragma once

#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace dos {

// Evaluate fn(i) for every i in [0, count) on `threads` workers (0 = hardware
// concurrency) and gather results by index: the output never depends on how
// the work was scheduled. fn must be safe to call concurrently; the first
// exception wins and is rethrown after all workers drain.
template <class T, class Fn>
std::vector<T> parallel_map(std::size_t count, unsigned threads, Fn&& fn) {
    std::vector<T> out(count);
    if (count == 0) return out;

    unsigned n = threads != 0 ? threads : std::thread::hardware_concurrency();
    if (n == 0) n = 1;
    if (static_cast<std::size_t>(n) > count) n = static_cast<unsigned>(count);

    if (n == 1) {
        for (std::size_t i = 0; i < count; ++i) out[i] = fn(i);
        return out;
    }

    std::atomic<std::size_t> next{0};
    std::atomic<bool> failed{false};
    std::exception_ptr error;
    std::mutex error_mutex;

    auto worker = [&] {
        while (!failed.load(std::memory_order_relaxed)) {
            const std::size_t i = next.fetch_add(1, std::memory_order_relaxed);
            if (i >= count) return;
            try {
                out[i] = fn(i);
            } catch (...) {
                const std::lock_guard<std::mutex> lock(error_mutex);
                if (!error) error = std::current_exception();
                failed.store(true, std::memory_order_relaxed);
            }
        }
    };

    std::vector<std::thread> pool;
    pool.reserve(n);
    for (unsigned t = 0; t < n; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
    if (error) std::rethrow_exception(error);
    return out;
}

}  // namespace dos
