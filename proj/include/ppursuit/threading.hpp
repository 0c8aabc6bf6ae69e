#pragma once

#include <cstdlib>
#include <functional>
#include <thread>
#include <vector>

namespace ppursuit {

/// Worker cap taken from PPURSUIT_THREADS (0, unset or unparseable means
/// one worker per hardware thread).
inline int thread_budget() {
    int budget = 0;
    if (const char* env = std::getenv("PPURSUIT_THREADS")) {
        budget = std::atoi(env);
    }
    if (budget <= 0) {
        budget = static_cast<int>(std::thread::hardware_concurrency());
        if (budget <= 0) budget = 1;
    }
    return budget;
}

/// Runs body(i) for i in [0, count) on up to thread_budget() threads.
/// Work is assigned by index stride, so any result written to slot i of a
/// preallocated buffer lands identically no matter the thread count. The
/// first exception thrown by any body is rethrown after all workers join.
inline void parallel_for(int count, const std::function<void(int)>& body) {
    const int workers = std::min(thread_budget(), count);
    if (workers <= 1) {
        for (int i = 0; i < count; ++i) body(i);
        return;
    }
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errors(workers);
    pool.reserve(workers);
    for (int t = 0; t < workers; ++t) {
        pool.emplace_back([&, t] {
            try {
                for (int i = t; i < count; i += workers) body(i);
            } catch (...) {
                errors[t] = std::current_exception();
            }
        });
    }
    for (auto& th : pool) th.join();
    for (const auto& err : errors) {
        if (err) std::rethrow_exception(err);
    }
}

}  // namespace ppursuit
