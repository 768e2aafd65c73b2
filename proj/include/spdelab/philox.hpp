#pragma once

#include <array>
#include <cmath>
#include <cstdint>

namespace spde {

// Philox4x32-10 counter-based generator (Salmon et al., SC'11).
// A block is a pure function of (counter, key): random access into the
// stream needs no generator state, which is what makes path/mode/step
// keyed sampling reproducible independently of execution order.
namespace philox {

inline void mulhilo(uint32_t a, uint32_t b, uint32_t& hi, uint32_t& lo) {
    uint64_t p = static_cast<uint64_t>(a) * b;
    hi = static_cast<uint32_t>(p >> 32);
    lo = static_cast<uint32_t>(p);
}

inline std::array<uint32_t, 4> block(std::array<uint32_t, 4> ctr, std::array<uint32_t, 2> key) {
    constexpr uint32_t kM0 = 0xD2511F53u, kM1 = 0xCD9E8D57u;
    constexpr uint32_t kW0 = 0x9E3779B9u, kW1 = 0xBB67AE85u;
    for (int round = 0; round < 10; ++round) {
        uint32_t hi0, lo0, hi1, lo1;
        mulhilo(kM0, ctr[0], hi0, lo0);
        mulhilo(kM1, ctr[2], hi1, lo1);
        ctr = {hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
        key[0] += kW0;
        key[1] += kW1;
    }
    return ctr;
}

// Strictly inside (0,1): (v >> 11) in [0, 2^53), shifted by 1/2 ulp.
inline double uniform01(uint32_t lo, uint32_t hi) {
    uint64_t v = (static_cast<uint64_t>(hi) << 32) | lo;
    return (static_cast<double>(v >> 11) + 0.5) * 0x1.0p-53;
}

}  // namespace philox

// Standard normal draw addressed by (master_seed, path_index, mode, step).
// One Philox block per draw, Box-Muller cosine branch.
inline double gaussian_at(uint64_t master_seed, uint64_t path_index, uint32_t mode, uint32_t step) {
    std::array<uint32_t, 4> ctr = {step, mode, static_cast<uint32_t>(path_index),
                                   static_cast<uint32_t>(path_index >> 32)};
    std::array<uint32_t, 2> key = {static_cast<uint32_t>(master_seed),
                                   static_cast<uint32_t>(master_seed >> 32)};
    auto r = philox::block(ctr, key);
    double u1 = philox::uniform01(r[0], r[1]);
    double u2 = philox::uniform01(r[2], r[3]);
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586476925286766559 * u2);
}

}  // namespace spde
