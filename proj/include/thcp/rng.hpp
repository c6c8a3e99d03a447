#pragma once

#include <cstdint>

// Deterministic RNG utilities. Everything here is defined bit-exactly so that
// results reproduce across platforms and across the scalar/SIMD kernel
// backends:
//
//   mix64(z)               -- the splitmix64 finalizer:
//                             z ^= z >> 30; z *= 0xbf58476d1ce4e5b9;
//                             z ^= z >> 27; z *= 0x94d049bb133111eb;
//                             z ^= z >> 31;
//   derive_seed(m, i)      -- mix64(m + (i + 1) * 0x9e3779b97f4a7c15)
//   draw_bits(s, t, v)     -- mix64(mix64(s + (t + 1) * 0x9e3779b97f4a7c15)
//                                   + (v + 1) * 0xc2b2ae3d27d4eb4f)
//   unit_double(bits)      -- (bits >> 11) * 2^-53, uniform on [0, 1)
//
// draw_bits is the per-(vertex, time) uniform of the contact process: it is
// counter-based, so a step may evaluate vertices in any order (or in SIMD
// lanes) and still produce the exact sequence of draws "one per vertex in
// ascending vertex order".

namespace thcp {

constexpr std::uint64_t kGolden64 = 0x9e3779b97f4a7c15ULL;

constexpr std::uint64_t mix64(std::uint64_t z) {
    z ^= z >> 30;
    z *= 0xbf58476d1ce4e5b9ULL;
    z ^= z >> 27;
    z *= 0x94d049bb133111ebULL;
    z ^= z >> 31;
    return z;
}

// Stateless per-index seed derivation; injective in `index` for a fixed
// master since mix64 is a bijection and the golden constant is odd.
constexpr std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) {
    return mix64(master + (index + 1) * kGolden64);
}

// Counter-based uniform bits for (seed, time, vertex).
constexpr std::uint64_t draw_bits(std::uint64_t seed, std::uint64_t t, std::uint64_t v) {
    std::uint64_t z = mix64(seed + (t + 1) * kGolden64);
    return mix64(z + (v + 1) * 0xc2b2ae3d27d4eb4fULL);
}

constexpr double unit_double(std::uint64_t bits) {
    return static_cast<double>(bits >> 11) * 0x1.0p-53;
}

// Bernoulli(p) decisions are made in the integer domain: accept iff
// (bits >> 11) < threshold53(p). Exact for p = k/2^53; otherwise p is
// quantized to the nearest multiple of 2^-53. Monotone in p, which the
// coupled-process containment relies on.
constexpr std::uint64_t threshold53(double p) {
    if (p <= 0.0) return 0;
    if (p >= 1.0) return 1ULL << 53;
    double scaled = p * 0x1.0p53;
    auto t = static_cast<std::uint64_t>(scaled);
    if (scaled - static_cast<double>(t) >= 0.5) ++t;
    return t;
}

// Sequential stream generator (splitmix64). Used for graph generation,
// degree sampling and subset sampling, where a stream is more natural than
// a counter.
class SplitMix64 {
  public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() { return mix64(state_ += kGolden64); }

    double next_unit() { return unit_double(next()); }

    // Unbiased integer in [0, bound) by rejection (Lemire's method).
    std::uint64_t next_below(std::uint64_t bound) {
        // bound = 0 would be a caller bug; treat as 1 to stay total.
        if (bound <= 1) return 0;
        while (true) {
            std::uint64_t x = next();
            __uint128_t m = static_cast<__uint128_t>(x) * bound;
            auto lo = static_cast<std::uint64_t>(m);
            if (lo >= bound || lo >= (0ULL - bound) % bound)
                return static_cast<std::uint64_t>(m >> 64);
        }
    }

  private:
    std::uint64_t state_;
};

}  // namespace thcp
