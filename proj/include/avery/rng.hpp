#pragma once

#include <cmath>
#include <cstdint>

namespace avery {

// SplitMix64 (Steele, Lea & Flood; public domain via Vigna's reference
// implementation). Traces must regenerate bit-for-bit everywhere, and std::
// engines/distributions are not bit-portable across standard libraries.
// Substreams come from drawing one value per consumer off a master generator
// (splittable seeding).
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    // Uniform in [0, 1) with 53 random mantissa bits.
    double next_unit() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    // Fork an independent substream.
    SplitMix64 split() { return SplitMix64(next_u64()); }

private:
    std::uint64_t state_;
};

// Standard-normal draw via the Box-Muller transform over two SplitMix64
// uniforms. Deterministic given the generator state; no libm dependence
// beyond log/sqrt/cos, which are correctly rounded enough for reproducible
// trace generation at double precision on conforming platforms.
inline double next_gaussian(SplitMix64& rng) {
    double u1 = rng.next_unit();
    double u2 = rng.next_unit();
    while (u1 <= 0.0) u1 = rng.next_unit();
    constexpr double two_pi = 6.283185307179586476925286766559;
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(two_pi * u2);
}

} // namespace avery
