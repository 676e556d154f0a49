#pragma once

#include <cstdint>
#include <future>
#include <random>
#include <thread>
#include <vector>

namespace bellpoly {

/// splitmix64 step; used to derive independent substream seeds.
inline std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

/// Seed of substream `stream` of a master seed. Samplers give every
/// trial block (and every auxiliary purpose inside a block) its own
/// substream, so merged results do not depend on the thread count.
inline std::uint64_t substream_seed(std::uint64_t seed, std::uint64_t stream) {
    std::uint64_t s = seed;
    (void)splitmix64(s);
    s ^= 0x6a09e667f3bcc909ull + stream * 0x9e3779b97f4a7c15ull;
    return splitmix64(s);
}

/// Canonical uniform in [0, 1) with 53 random bits.
inline double uniform01(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

/// Trials are processed in fixed blocks of this many samples; block k uses
/// substreams derived from (seed, k). This layout is part of the
/// reproducibility contract.
inline constexpr std::uint64_t kTrialBlockSize = 1u << 16;

/// Runs `fn(block_index, trials_in_block)` for every block covering
/// `total` trials, possibly in parallel, and returns the per-block results
/// in block order. The merge order is fixed, so results are identical for
/// any worker count.
template <class Result, class Fn>
std::vector<Result> map_trial_blocks(std::uint64_t total, Fn fn) {
    const std::uint64_t blocks = (total + kTrialBlockSize - 1) / kTrialBlockSize;
    std::vector<Result> results(static_cast<std::size_t>(blocks));

    unsigned workers = std::thread::hardware_concurrency();
    if (workers == 0) workers = 1;
    if (static_cast<std::uint64_t>(workers) > blocks) {
        workers = static_cast<unsigned>(blocks);
    }

    auto run_range = [&](std::uint64_t begin, std::uint64_t end) {
        for (std::uint64_t b = begin; b < end; ++b) {
            const std::uint64_t lo = b * kTrialBlockSize;
            const std::uint64_t count = std::min(kTrialBlockSize, total - lo);
            results[static_cast<std::size_t>(b)] = fn(b, count);
        }
    };

    if (workers <= 1) {
        run_range(0, blocks);
        return results;
    }

    std::vector<std::future<void>> futures;
    const std::uint64_t chunk = (blocks + workers - 1) / workers;
    for (unsigned w = 0; w < workers; ++w) {
        const std::uint64_t begin = w * chunk;
        const std::uint64_t end = std::min(blocks, begin + chunk);
        if (begin >= end) break;
        futures.push_back(std::async(std::launch::async, run_range, begin, end));
    }
    for (auto& f : futures) f.get();
    return results;
}

}  // namespace bellpoly
