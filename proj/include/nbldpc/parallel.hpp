// Minimal frame-level work sharing. Results are always written to slots
// keyed by index, so the outcome is identical for any worker count.
#pragma once

#include <atomic>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

namespace nbldpc {

// NBLDPC_WORKERS overrides the detected core count.
inline unsigned default_worker_count() {
    if (const char* env = std::getenv("NBLDPC_WORKERS")) {
        char* end = nullptr;
        long v = std::strtol(env, &end, 10);
        if (end == env || *end != '\0' || v < 1)
            throw std::invalid_argument("NBLDPC_WORKERS must be a positive integer, got '" +
                                        std::string(env) + "'");
        return static_cast<unsigned>(v);
    }
    unsigned hc = std::thread::hardware_concurrency();
    return hc ? hc : 1;
}

// Runs fn(i) for every i in [0, count). fn must only touch state owned by
// index i. The first exception thrown by any worker is rethrown here.
template <typename Fn>
void parallel_for(std::size_t count, unsigned workers, Fn&& fn) {
    if (count == 0)
        return;
    if (workers == 0)
        workers = default_worker_count();
    if (workers == 1 || count == 1) {
        for (std::size_t i = 0; i < count; ++i)
            fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    auto body = [&]() {
        try {
            for (std::size_t i = next.fetch_add(1); i < count; i = next.fetch_add(1))
                fn(i);
        } catch (...) {
            std::lock_guard<std::mutex> lock(error_mutex);
            if (!error)
                error = std::current_exception();
            next.store(count);
        }
    };
    std::vector<std::thread> pool;
    unsigned spawn = static_cast<unsigned>(std::min<std::size_t>(workers, count));
    pool.reserve(spawn);
    for (unsigned w = 0; w < spawn; ++w)
        pool.emplace_back(body);
    for (auto& t : pool)
        t.join();
    if (error)
        std::rethrow_exception(error);
}

} // namespace nbldpc
