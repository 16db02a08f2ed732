#include "wedgeqft/sampling.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace wedgeqft {

std::uint64_t splitmix64(std::uint64_t x)
{
    x += 0x9E3779B97F4A7C15ull;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}

std::mt19937_64 stream(std::uint64_t seed, std::uint64_t index)
{
    std::seed_seq seq{static_cast<std::uint32_t>(splitmix64(seed)), static_cast<std::uint32_t>(splitmix64(seed) >> 32),
                      static_cast<std::uint32_t>(splitmix64(seed ^ splitmix64(index + 1))),
                      static_cast<std::uint32_t>(index)};
    return std::mt19937_64(seq);
}

void for_each_chunk(std::size_t total, std::size_t chunk, unsigned jobs,
                    const std::function<void(std::size_t, std::size_t, std::size_t)>& fn)
{
    if (chunk == 0)
        chunk = 1;
    const std::size_t chunks = (total + chunk - 1) / chunk;
    auto run = [&](std::size_t c) { fn(c, c * chunk, std::min(total, (c + 1) * chunk)); };
    if (jobs <= 1 || chunks <= 1) {
        for (std::size_t c = 0; c < chunks; ++c)
            run(c);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    std::vector<std::thread> pool;
    const unsigned n = std::min<std::size_t>(jobs, chunks);
    for (unsigned t = 0; t < n; ++t)
        pool.emplace_back([&] {
            for (std::size_t c = next++; c < chunks; c = next++) {
                try {
                    run(c);
                } catch (...) {
                    std::lock_guard<std::mutex> lock(error_mutex);
                    if (!error)
                        error = std::current_exception();
                }
            }
        });
    for (auto& th : pool)
        th.join();
    if (error)
        std::rethrow_exception(error);
}

} // namespace wedgeqft
