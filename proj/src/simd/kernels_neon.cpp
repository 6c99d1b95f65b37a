#include "bhc/simd.hpp"

#if defined(__aarch64__) || defined(__ARM_NEON)

#include <arm_neon.h>

namespace bhc::simd::neon {

std::size_t count_nonzero(std::span<const std::uint8_t> bytes) {
    const std::uint8_t* p = bytes.data();
    const std::size_t n = bytes.size();
    std::size_t count = 0;
    std::size_t i = 0;
    for (; i + 16 <= n; i += 16) {
        uint8x16_t v = vld1q_u8(p + i);
        // 0xFF where nonzero; shift to 0/1 and sum lanes
        uint8x16_t nz = vshrq_n_u8(vtstq_u8(v, v), 7);
        count += vaddvq_u8(nz);
    }
    for (; i < n; ++i) count += p[i] != 0;
    return count;
}

std::size_t nonzero_positions(std::span<const std::uint8_t> bytes, std::uint32_t* out) {
    const std::uint8_t* p = bytes.data();
    const std::size_t n = bytes.size();
    std::size_t count = 0;
    std::size_t i = 0;
    for (; i + 16 <= n; i += 16) {
        uint8x16_t v = vld1q_u8(p + i);
        // narrow each lane to 4 bits -> 64-bit mask with a nibble per byte
        uint8x8_t packed = vshrn_n_u16(vreinterpretq_u16_u8(vtstq_u8(v, v)), 4);
        std::uint64_t mask = vget_lane_u64(vreinterpret_u64_u8(packed), 0);
        while (mask) {
            unsigned bit = static_cast<unsigned>(__builtin_ctzll(mask));
            out[count++] = static_cast<std::uint32_t>(i + bit / 4);
            mask &= ~(std::uint64_t{0xF} << (bit & ~3u));
        }
    }
    for (; i < n; ++i)
        if (p[i]) out[count++] = static_cast<std::uint32_t>(i);
    return count;
}

} // namespace bhc::simd::neon

#endif
