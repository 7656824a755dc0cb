#pragma once

#include <algorithm>
#include <cstddef>
#include <exception>
#include <thread>
#include <vector>

namespace polar {

/// Splits [0, n) into contiguous chunks, runs `work(begin, end)` for each on up
/// to `workers` threads, and concatenates the returned vectors in chunk order.
/// The result is independent of the worker count whenever `work` is pure.
template <class T, class Work>
std::vector<T> parallel_collect(std::size_t n, unsigned workers, Work work) {
    workers = std::max(1u, workers);
    if (workers == 1 || n < 2) return work(std::size_t{0}, n);

    const std::size_t chunks = std::min<std::size_t>(n, std::size_t{workers} * 4);
    std::vector<std::vector<T>> parts(chunks);
    std::vector<std::exception_ptr> errors(chunks);
    auto bounds = [&](std::size_t c) { return std::pair{n * c / chunks, n * (c + 1) / chunks}; };

    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
        pool.emplace_back([&, w] {
            for (std::size_t c = w; c < chunks; c += workers) {
                try {
                    auto [b, e] = bounds(c);
                    parts[c] = work(b, e);
                } catch (...) {
                    errors[c] = std::current_exception();
                }
            }
        });
    }
    for (auto& t : pool) t.join();
    for (auto& e : errors) {
        if (e) std::rethrow_exception(e);
    }
    std::vector<T> out;
    for (auto& p : parts) out.insert(out.end(), std::make_move_iterator(p.begin()), std::make_move_iterator(p.end()));
    return out;
}

}  // namespace polar
