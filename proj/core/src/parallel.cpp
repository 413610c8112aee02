#include "qcorr/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <thread>

namespace qcorr {

namespace {

std::atomic<unsigned> g_thread_override{0};

unsigned default_thread_count() noexcept {
    if (const char* env = std::getenv("QCORR_THREADS")) {
        const long v = std::strtol(env, nullptr, 10);
        if (v > 0) {
            return static_cast<unsigned>(v);
        }
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

} // namespace

unsigned thread_count() noexcept {
    const unsigned o = g_thread_override.load(std::memory_order_relaxed);
    return o != 0 ? o : default_thread_count();
}

void set_thread_count(unsigned count) noexcept {
    g_thread_override.store(count, std::memory_order_relaxed);
}

void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body) {
    const std::size_t workers = std::min<std::size_t>(thread_count(), n);
    if (workers <= 1) {
        for (std::size_t i = 0; i < n; ++i) {
            body(i);
        }
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto run = [&] {
        for (std::size_t i = next++; i < n; i = next++) {
            try {
                body(i);
            } catch (...) {
                std::lock_guard lock(failure_mutex);
                if (!failure) {
                    failure = std::current_exception();
                }
                next = n;
            }
        }
    };
    std::vector<std::jthread> pool;
    pool.reserve(workers - 1);
    for (std::size_t t = 1; t < workers; ++t) {
        pool.emplace_back(run);
    }
    run();
    pool.clear();
    if (failure) {
        std::rethrow_exception(failure);
    }
}

double ordered_sum(std::size_t n, const std::function<double(std::size_t)>& term) {
    std::vector<double> parts(n, 0.0);
    parallel_for(n, [&](std::size_t i) { parts[i] = term(i); });
    double total = 0.0;
    for (double v : parts) {
        total += v;
    }
    return total;
}

} // namespace qcorr
