#pragma once

#include <cstdint>

namespace wsn {

// One mixing step of splitmix64. Also used to derive per-run seeds for
// multi-seed sweeps: seed_i = splitmix64_mix(base_seed + i).
inline std::uint64_t splitmix64_mix(std::uint64_t& state) {
    state += 0x9E3779B97F4A7C15ull;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

inline std::uint64_t derive_seed(std::uint64_t base_seed, std::uint64_t index) {
    std::uint64_t s = base_seed + index;
    return splitmix64_mix(s);
}

// Portable deterministic PRNG. The draw order is part of the simulator's
// contract, so every consumer documents how many draws it takes.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() { return splitmix64_mix(state_); }

    // uniform in [0,1) via 53-bit mantissa division
    double next_real() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    std::uint64_t state() const { return state_; }

private:
    std::uint64_t state_;
};

}  // namespace wsn
