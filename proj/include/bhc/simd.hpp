#pragma once

// Byte-map scanning kernels used by the sieves. Each kernel has a scalar
// reference implementation plus AVX2 / NEON variants; the dispatching entry
// points pick the best variant supported by the running CPU.

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>

namespace bhc::simd {

enum class Isa { scalar, avx2, neon };

std::string_view isa_name(Isa isa);

/// Best ISA available on this CPU, unless overridden by BHC_SIMD=scalar.
Isa active_isa();
bool isa_supported(Isa isa);

/// Number of nonzero bytes.
std::size_t count_nonzero(std::span<const std::uint8_t> bytes);
/// Writes the index of every nonzero byte to `out` (ascending), returns how many.
/// `out` must have room for bytes.size() entries.
std::size_t nonzero_positions(std::span<const std::uint8_t> bytes, std::uint32_t* out);

namespace scalar {
std::size_t count_nonzero(std::span<const std::uint8_t> bytes);
std::size_t nonzero_positions(std::span<const std::uint8_t> bytes, std::uint32_t* out);
} // namespace scalar

#if defined(__x86_64__) || defined(_M_X64)
namespace avx2 {
std::size_t count_nonzero(std::span<const std::uint8_t> bytes);
std::size_t nonzero_positions(std::span<const std::uint8_t> bytes, std::uint32_t* out);
} // namespace avx2
#endif

#if defined(__aarch64__) || defined(__ARM_NEON)
namespace neon {
std::size_t count_nonzero(std::span<const std::uint8_t> bytes);
std::size_t nonzero_positions(std::span<const std::uint8_t> bytes, std::uint32_t* out);
} // namespace neon
#endif

} // namespace bhc::simd
