#ifndef FQCYCLES_SRC_PARALLEL_HPP
#define FQCYCLES_SRC_PARALLEL_HPP

#include <algorithm>
#include <cstdint>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace fqc::detail {

// Runs fn(shard, begin, end) over `threads` contiguous shards of [0, count).
// The first exception thrown by any shard is rethrown on the caller.
template <class Fn>
void parallel_shards(std::uint64_t count, unsigned threads, Fn fn) {
    threads = std::max(1u, threads);
    if (count < threads)
        threads = static_cast<unsigned>(std::max<std::uint64_t>(1, count));
    if (threads == 1) {
        fn(0u, std::uint64_t{0}, count);
        return;
    }
    std::exception_ptr error;
    std::mutex error_mutex;
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (unsigned s = 0; s < threads; ++s) {
        const std::uint64_t begin = count * s / threads;
        const std::uint64_t end = count * (s + 1) / threads;
        pool.emplace_back([&, s, begin, end] {
            try {
                fn(s, begin, end);
            } catch (...) {
                std::lock_guard lock(error_mutex);
                if (!error)
                    error = std::current_exception();
            }
        });
    }
    for (auto& t : pool)
        t.join();
    if (error)
        std::rethrow_exception(error);
}

} // namespace fqc::detail

#endif
