#pragma once

// Deterministic sampling helpers and a minimal chunked parallel-for.
// std::uniform_int_distribution is not byte-reproducible across standard
// libraries, so bounded draws are done by rejection on the raw engine.

#include <algorithm>
#include <cstdint>
#include <random>
#include <thread>
#include <utility>
#include <vector>

namespace qdhj::detail {

/// Uniform draw from [0, bound) using rejection; identical output for a
/// given engine state on every platform.
inline std::uint64_t bounded(std::mt19937_64& rng, std::uint64_t bound) {
    const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % bound + 1) % bound;
    std::uint64_t x;
    do {
        x = rng();
    } while (x > limit);
    return x % bound;
}

template <typename T>
void shuffle(std::vector<T>& items, std::mt19937_64& rng) {
    for (std::size_t i = items.size(); i > 1; --i)
        std::swap(items[i - 1], items[bounded(rng, i)]);
}

/// First `count` entries of a seeded permutation of [0, universe);
/// a partial Fisher-Yates over an index table.
inline std::vector<std::uint64_t> sample_distinct(std::uint64_t universe, std::uint64_t count,
                                                  std::mt19937_64& rng) {
    std::vector<std::uint64_t> pool(universe);
    for (std::uint64_t i = 0; i < universe; ++i) pool[i] = i;
    for (std::uint64_t i = 0; i < count; ++i)
        std::swap(pool[i], pool[i + bounded(rng, universe - i)]);
    pool.resize(count);
    return pool;
}

/// Runs fn(chunk_index, begin, end) over [0, count) split into contiguous
/// chunks. threads <= 1 runs inline; results must be merged by the caller
/// in chunk order when ordering matters.
template <typename Fn>
void parallel_chunks(std::size_t count, int threads, Fn&& fn) {
    if (threads <= 1 || count < 2) {
        fn(0, std::size_t{0}, count);
        return;
    }
    const std::size_t parts = std::min<std::size_t>(static_cast<std::size_t>(threads), count);
    std::vector<std::thread> pool;
    pool.reserve(parts);
    const std::size_t step = (count + parts - 1) / parts;
    for (std::size_t p = 0; p < parts; ++p) {
        const std::size_t begin = p * step;
        const std::size_t end = std::min(count, begin + step);
        if (begin >= end) break;
        pool.emplace_back([&fn, p, begin, end] { fn(p, begin, end); });
    }
    for (auto& t : pool) t.join();
}

}  // namespace qdhj::detail
