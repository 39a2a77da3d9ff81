#pragma once

#include <atomic>
#include <cstddef>
#include <exception>
#include <thread>
#include <vector>

namespace p2pmarket {

/// Run fn(i) for i in [0, n) on a small worker pool. Each index writes
/// only its own output slot, so results are identical to a serial run;
/// the lowest-index exception (if any) is rethrown.
template <typename Fn>
void parallel_for_index(std::size_t n, Fn&& fn, unsigned max_threads = 0) {
    unsigned hw = std::thread::hardware_concurrency();
    unsigned workers = max_threads ? max_threads : (hw ? hw : 1);
    if (workers <= 1 || n <= 1) {
        for (std::size_t i = 0; i < n; ++i)
            fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::exception_ptr> errors(n);
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            for (std::size_t i = next.fetch_add(1); i < n; i = next.fetch_add(1)) {
                try {
                    fn(i);
                } catch (...) {
                    errors[i] = std::current_exception();
                }
            }
        });
    }
    for (auto& t : pool)
        t.join();
    for (auto& e : errors)
        if (e)
            std::rethrow_exception(e);
}

} // namespace p2pmarket
