#pragma once

#include <cstdint>

namespace ppursuit {

/// Finalizer of the splitmix64 generator; a fixed 64-bit mixing function.
inline std::uint64_t splitmix64(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

/// Seed of the i-th independent substream of `master`: the i-th output of
/// the splitmix64 sequence started at `master`. Used to hand every
/// simulation replicate (and every draw stage inside a replicate) its own
/// generator, so results do not depend on scheduling order.
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t i) {
    return splitmix64(master + i * 0x9e3779b97f4a7c15ULL);
}

}  // namespace ppursuit
