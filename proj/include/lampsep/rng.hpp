#pragma once

#include <cstdint>

namespace lampsep {

// Splittable 64-bit PRNG (splitmix64 finalizer). All randomized routines in
// this library draw from it instead of <random> distributions so that a seed
// yields the same stream on every platform and standard library.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // Uniform in [0, n); n > 0. Fixed-point multiply keeps the mapping
    // platform-independent (no rejection loop, bias < 2^-64 per draw).
    std::uint64_t next_below(std::uint64_t n) {
        return static_cast<std::uint64_t>(
            (static_cast<unsigned __int128>(next()) * n) >> 64);
    }

    // Derives an independent child stream for a tagged subtask without
    // advancing this generator, so sibling subtasks are decorrelated and
    // reordering them does not change any stream.
    SplitMix64 child(std::uint64_t tag) const {
        SplitMix64 mixer(state_ ^ (0xd1342543de82ef95ULL * (tag + 1)));
        return SplitMix64(mixer.next());
    }

private:
    std::uint64_t state_;
};

} // namespace lampsep
