#pragma once

#include <cstdint>
#include <functional>
#include <random>

namespace wedgeqft {

std::uint64_t splitmix64(std::uint64_t x);

// Independent generator for chunk `index` of a run seeded with `seed`.
std::mt19937_64 stream(std::uint64_t seed, std::uint64_t index);

// Runs fn(chunk_index, begin, end) over [0,total) split in fixed chunks of
// `chunk` items, on up to `jobs` threads. The chunking does not depend on
// `jobs`, so seeded per-chunk streams give identical results for any
// thread count.
void for_each_chunk(std::size_t total, std::size_t chunk, unsigned jobs,
                    const std::function<void(std::size_t, std::size_t, std::size_t)>& fn);

} // namespace wedgeqft
