#ifndef LEAPFROG_PARALLEL_HPP
#define LEAPFROG_PARALLEL_HPP

#include <atomic>
#include <cstddef>
#include <cstdlib>
#include <thread>
#include <vector>

namespace leapfrog {

/// Worker-pool size: hardware concurrency capped by LEAPFROG_THREADS.
inline unsigned worker_count()
{
    unsigned n = std::thread::hardware_concurrency();
    if (n == 0)
        n = 1;
    if (const char* env = std::getenv("LEAPFROG_THREADS")) {
        long cap = std::atol(env);
        if (cap >= 1 && unsigned(cap) < n)
            n = unsigned(cap);
    }
    return n;
}

/// Runs body(i) for i in [0, n); cells must be independent. Results keyed by
/// index stay deterministic regardless of scheduling.
template <class Body>
void parallel_for(std::size_t n, Body&& body)
{
    const unsigned workers = worker_count();
    if (workers <= 1 || n <= 1) {
        for (std::size_t i = 0; i < n; ++i)
            body(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    std::exception_ptr error;
    std::atomic<bool> failed{false};
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            for (;;) {
                std::size_t i = next.fetch_add(1);
                if (i >= n || failed.load())
                    return;
                try {
                    body(i);
                } catch (...) {
                    if (!failed.exchange(true))
                        error = std::current_exception();
                    return;
                }
            }
        });
    }
    for (auto& t : pool)
        t.join();
    if (failed.load())
        std::rethrow_exception(error);
}

} // namespace leapfrog

#endif
