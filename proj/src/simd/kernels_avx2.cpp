#include "bhc/simd.hpp"

#if defined(__x86_64__) || defined(_M_X64)

#include <immintrin.h>

#include <bit>

#define BHC_AVX2 __attribute__((target("avx2,popcnt,bmi")))

namespace bhc::simd::avx2 {

// 32 bytes per step: compare against zero, movemask, popcount the complement.
BHC_AVX2 std::size_t count_nonzero(std::span<const std::uint8_t> bytes) {
    const std::uint8_t* p = bytes.data();
    const std::size_t n = bytes.size();
    const __m256i zero = _mm256_setzero_si256();
    std::size_t count = 0;
    std::size_t i = 0;
    for (; i + 32 <= n; i += 32) {
        __m256i v = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(p + i));
        auto zmask = static_cast<std::uint32_t>(_mm256_movemask_epi8(_mm256_cmpeq_epi8(v, zero)));
        count += 32 - static_cast<std::size_t>(_mm_popcnt_u32(zmask));
    }
    for (; i < n; ++i) count += p[i] != 0;
    return count;
}

BHC_AVX2 std::size_t nonzero_positions(std::span<const std::uint8_t> bytes, std::uint32_t* out) {
    const std::uint8_t* p = bytes.data();
    const std::size_t n = bytes.size();
    const __m256i zero = _mm256_setzero_si256();
    std::size_t count = 0;
    std::size_t i = 0;
    for (; i + 32 <= n; i += 32) {
        __m256i v = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(p + i));
        auto mask = ~static_cast<std::uint32_t>(_mm256_movemask_epi8(_mm256_cmpeq_epi8(v, zero)));
        while (mask) {
            out[count++] = static_cast<std::uint32_t>(i + static_cast<std::size_t>(_tzcnt_u32(mask)));
            mask &= mask - 1;
        }
    }
    for (; i < n; ++i)
        if (p[i]) out[count++] = static_cast<std::uint32_t>(i);
    return count;
}

} // namespace bhc::simd::avx2

#endif
