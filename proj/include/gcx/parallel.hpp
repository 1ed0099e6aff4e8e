#pragma once
// Minimal deterministic worker pool: static interleaved partition of [0, n).

#include <algorithm>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace gcx {

template <class F>
void parallel_for(std::size_t n, int workers, F&& fn) {
    int w = std::max(1, std::min<int>(workers, static_cast<int>(std::max<std::size_t>(n, 1))));
    if (w == 1) {
        for (std::size_t i = 0; i < n; ++i) fn(i, 0);
        return;
    }
    std::exception_ptr err;
    std::mutex mu;
    std::vector<std::thread> pool;
    for (int k = 0; k < w; ++k) {
        pool.emplace_back([&, k] {
            try {
                for (std::size_t i = static_cast<std::size_t>(k); i < n; i += static_cast<std::size_t>(w)) fn(i, k);
            } catch (...) {
                std::lock_guard lock(mu);
                if (!err) err = std::current_exception();
            }
        });
    }
    for (auto& t : pool) t.join();
    if (err) std::rethrow_exception(err);
}

}  // namespace gcx
