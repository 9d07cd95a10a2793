#pragma once

// Deterministic fork-join helper: work is split into contiguous chunks whose
// results land in per-chunk slots, so merge order never depends on thread
// scheduling.

#include <cstddef>
#include <cstdlib>
#include <exception>
#include <string>
#include <thread>
#include <vector>

namespace circlepack {

inline int resolve_workers(int requested) {
    if (const char* env = std::getenv("CIRCLEPACK_WORKERS")) {
        try {
            const int n = std::stoi(env);
            if (n >= 1) return n;
        } catch (const std::exception&) {
        }
    }
    return requested >= 1 ? requested : 1;
}

// Runs fn(chunk_index, begin, end) over [0, n) split into roughly equal
// contiguous chunks, one chunk per worker. fn must only write state owned by
// its chunk index.
template <class Fn>
void parallel_chunks(std::size_t n, int workers, std::size_t n_chunks, Fn&& fn) {
    if (n == 0) return;
    if (workers <= 1 || n_chunks <= 1) {
        for (std::size_t c = 0; c < n_chunks; ++c) {
            const std::size_t b = n * c / n_chunks, e = n * (c + 1) / n_chunks;
            if (b < e) fn(c, b, e);
        }
        return;
    }
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errors(static_cast<std::size_t>(workers));
    for (int w = 0; w < workers; ++w) {
        pool.emplace_back([&, w] {
            try {
                for (std::size_t c = static_cast<std::size_t>(w); c < n_chunks;
                     c += static_cast<std::size_t>(workers)) {
                    const std::size_t b = n * c / n_chunks, e = n * (c + 1) / n_chunks;
                    if (b < e) fn(c, b, e);
                }
            } catch (...) {
                errors[static_cast<std::size_t>(w)] = std::current_exception();
            }
        });
    }
    for (auto& t : pool) t.join();
    for (auto& err : errors)
        if (err) std::rethrow_exception(err);
}

}  // namespace circlepack
