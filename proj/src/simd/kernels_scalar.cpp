#include "bhc/simd.hpp"

namespace bhc::simd::scalar {

std::size_t count_nonzero(std::span<const std::uint8_t> bytes) {
    std::size_t n = 0;
    for (std::uint8_t b : bytes) n += b != 0;
    return n;
}

std::size_t nonzero_positions(std::span<const std::uint8_t> bytes, std::uint32_t* out) {
    std::size_t n = 0;
    for (std::size_t i = 0; i < bytes.size(); ++i)
        if (bytes[i]) out[n++] = static_cast<std::uint32_t>(i);
    return n;
}

} // namespace bhc::simd::scalar
