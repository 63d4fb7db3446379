#pragma once

#include <cstdint>
#include <random>

namespace subq {

// splitmix64; used to derive independent substreams from a master seed.
inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

// Independent engine for substream `stream_id` of `master_seed`.
inline std::mt19937_64 substream(std::uint64_t master_seed, std::uint64_t stream_id) {
    return std::mt19937_64(splitmix64(master_seed ^ splitmix64(stream_id)));
}

// Uniform double in [0,1). Hand-rolled because std distributions are not
// bit-reproducible across standard library implementations; mt19937_64 is.
inline double uniform_double(std::mt19937_64& gen) {
    return static_cast<double>(gen() >> 11) * 0x1.0p-53;
}

// Uniform integer in [0, n) by rejection.
inline std::uint64_t uniform_below(std::mt19937_64& gen, std::uint64_t n) {
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    std::uint64_t x;
    do {
        x = gen();
    } while (x >= limit);
    return x % n;
}

} // namespace subq
