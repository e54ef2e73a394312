#ifndef SPREADNET_PARALLEL_HPP
#define SPREADNET_PARALLEL_HPP

#include <atomic>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace spreadnet {

// Worker count from SPREADNET_WORKERS, falling back to the hardware thread
// count. Always at least 1.
inline unsigned default_worker_count() {
    if (const char* env = std::getenv("SPREADNET_WORKERS")) {
        char* end = nullptr;
        const long v = std::strtol(env, &end, 10);
        if (end != env && *end == '\0' && v >= 1 && v <= 4096) return static_cast<unsigned>(v);
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? hw : 1;
}

// Runs fn(i) for every i in [0, count) on up to `workers` threads pulling
// from a shared counter. Each work item must touch only its own preallocated
// output slot; under that discipline results cannot depend on scheduling.
// The first exception thrown by any item is rethrown after all threads join.
template <typename Fn>
void parallel_for(std::size_t count, unsigned workers, Fn&& fn) {
    if (count == 0) return;
    if (workers <= 1 || count == 1) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    auto drain = [&] {
        for (;;) {
            const std::size_t i = next.fetch_add(1, std::memory_order_relaxed);
            if (i >= count) return;
            try {
                fn(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!error) error = std::current_exception();
                next.store(count, std::memory_order_relaxed);  // abandon remaining items
                return;
            }
        }
    };
    const std::size_t spawn = std::min<std::size_t>(workers, count);
    std::vector<std::thread> threads;
    threads.reserve(spawn);
    for (std::size_t t = 0; t < spawn; ++t) threads.emplace_back(drain);
    for (auto& th : threads) th.join();
    if (error) std::rethrow_exception(error);
}

}  // namespace spreadnet

#endif  // SPREADNET_PARALLEL_HPP
