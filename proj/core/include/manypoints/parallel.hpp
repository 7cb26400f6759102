#ifndef MANYPOINTS_PARALLEL_HPP
#define MANYPOINTS_PARALLEL_HPP

#include <thread>
#include <vector>

namespace manypoints {

/*
 * Deterministic fan-out: splits [0, n) into contiguous chunks, runs `fn`
 * per index on worker threads, and leaves combination to the caller (the
 * per-index results are stored positionally, so the reduction order is
 * independent of scheduling).
 */
template <typename T, typename Fn>
std::vector<T> parallel_map(size_t n, int jobs, Fn fn) {
    std::vector<T> out(n);
    if (jobs <= 1 || n <= 1) {
        for (size_t i = 0; i < n; ++i) out[i] = fn(i);
        return out;
    }
    size_t workers = std::min<size_t>(jobs, n);
    std::vector<std::thread> threads;
    std::vector<std::exception_ptr> errors(workers);
    for (size_t w = 0; w < workers; ++w) {
        threads.emplace_back([&, w]() {
            try {
                for (size_t i = w; i < n; i += workers) out[i] = fn(i);
            } catch (...) {
                errors[w] = std::current_exception();
            }
        });
    }
    for (auto& t : threads) t.join();
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
    return out;
}

} // namespace manypoints

#endif
