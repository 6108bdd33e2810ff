#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <utility>

namespace ovlab {

// Philox4x32-10 block cipher over a 128-bit counter with a 64-bit key. A
// fixed (counter, key) pair always yields the same 128 output bits, so any
// consumer can address the stream randomly instead of advancing state.
inline std::array<std::uint32_t, 4> philox4x32(std::array<std::uint32_t, 4> ctr,
                                               std::array<std::uint32_t, 2> key) {
    constexpr std::uint32_t kMulA = 0xD2511F53u;
    constexpr std::uint32_t kMulB = 0xCD9E8D57u;
    constexpr std::uint32_t kWeylA = 0x9E3779B9u;
    constexpr std::uint32_t kWeylB = 0xBB67AE85u;
    for (int round = 0; round < 10; ++round) {
        const std::uint64_t a = std::uint64_t(kMulA) * ctr[0];
        const std::uint64_t b = std::uint64_t(kMulB) * ctr[2];
        ctr = {std::uint32_t(b >> 32) ^ ctr[1] ^ key[0], std::uint32_t(b),
               std::uint32_t(a >> 32) ^ ctr[3] ^ key[1], std::uint32_t(a)};
        key[0] += kWeylA;
        key[1] += kWeylB;
    }
    return ctr;
}

// Standard normal (and uniform) variates addressed by (seed, index, draw).
// Each 128-bit block supplies two 53-bit uniforms in (0, 1), turned into a
// Box-Muller pair; draw d reads element d % 2 of block d / 2. Evaluation
// order therefore never affects the values, which is what makes sampling
// reproducible under any parallel schedule.
class NormalStream {
public:
    NormalStream(std::uint64_t seed, std::uint64_t index) : seed_(seed), index_(index) {}

    double normal(std::uint64_t draw) const {
        const auto [u1, u2] = unit_pair(draw >> 1);
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double phi = 2.0 * M_PI * u2;
        return (draw & 1) ? r * std::sin(phi) : r * std::cos(phi);
    }

    double uniform(std::uint64_t draw) const {
        const auto [u1, u2] = unit_pair(draw >> 1);
        return (draw & 1) ? u2 : u1;
    }

private:
    std::pair<double, double> unit_pair(std::uint64_t block) const {
        const auto words = philox4x32(
            {std::uint32_t(index_), std::uint32_t(index_ >> 32), std::uint32_t(block),
             std::uint32_t(block >> 32)},
            {std::uint32_t(seed_), std::uint32_t(seed_ >> 32)});
        return {to_unit(words[0], words[1]), to_unit(words[2], words[3])};
    }

    // Top 53 bits of the pair, offset half a step so the result avoids both
    // endpoints (log and angle stay finite).
    static double to_unit(std::uint32_t hi, std::uint32_t lo) {
        const std::uint64_t bits = (std::uint64_t(hi) << 32) | lo;
        return (double(bits >> 11) + 0.5) * 0x1.0p-53;
    }

    std::uint64_t seed_;
    std::uint64_t index_;
};

}  // namespace ovlab
