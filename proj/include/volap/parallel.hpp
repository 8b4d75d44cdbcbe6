#pragma once

#include <cstdlib>
#include <thread>
#include <vector>

namespace volap {

// Thread count: VOLAP_THREADS overrides hardware concurrency.
inline int thread_count() {
    if (const char* env = std::getenv("VOLAP_THREADS")) {
        const int n = std::atoi(env);
        if (n >= 1) return n;
    }
    const unsigned hc = std::thread::hardware_concurrency();
    return hc == 0 ? 1 : static_cast<int>(hc);
}

// Runs fn(i) for i in [0, n); each index is independent so the result does
// not depend on the thread count.
template <class Fn>
void parallel_for(int n, Fn&& fn) {
    const int nt = std::min(thread_count(), n);
    if (nt <= 1) {
        for (int i = 0; i < n; ++i) fn(i);
        return;
    }
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errors(nt);
    for (int t = 0; t < nt; ++t) {
        pool.emplace_back([&, t]() {
            try {
                for (int i = t; i < n; i += nt) fn(i);
            } catch (...) {
                errors[t] = std::current_exception();
            }
        });
    }
    for (auto& th : pool) th.join();
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
}

}  // namespace volap
