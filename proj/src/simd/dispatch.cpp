#include <cstdlib>
#include <string>

#include "bhc/simd.hpp"

namespace bhc::simd {

std::string_view isa_name(Isa isa) {
    switch (isa) {
    case Isa::scalar: return "scalar";
    case Isa::avx2: return "avx2";
    case Isa::neon: return "neon";
    }
    return "unknown";
}

bool isa_supported(Isa isa) {
    switch (isa) {
    case Isa::scalar: return true;
    case Isa::avx2:
#if defined(__x86_64__) || defined(_M_X64)
        return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("popcnt") && __builtin_cpu_supports("bmi");
#else
        return false;
#endif
    case Isa::neon:
#if defined(__aarch64__) || defined(__ARM_NEON)
        return true;
#else
        return false;
#endif
    }
    return false;
}

Isa active_isa() {
    static const Isa isa = [] {
        if (const char* env = std::getenv("BHC_SIMD"); env && std::string(env) == "scalar") return Isa::scalar;
        if (isa_supported(Isa::avx2)) return Isa::avx2;
        if (isa_supported(Isa::neon)) return Isa::neon;
        return Isa::scalar;
    }();
    return isa;
}

namespace {

struct Table {
    std::size_t (*count_nonzero)(std::span<const std::uint8_t>);
    std::size_t (*nonzero_positions)(std::span<const std::uint8_t>, std::uint32_t*);
};

const Table& table() {
    static const Table t = [] {
        switch (active_isa()) {
#if defined(__x86_64__) || defined(_M_X64)
        case Isa::avx2: return Table{&avx2::count_nonzero, &avx2::nonzero_positions};
#endif
#if defined(__aarch64__) || defined(__ARM_NEON)
        case Isa::neon: return Table{&neon::count_nonzero, &neon::nonzero_positions};
#endif
        default: return Table{&scalar::count_nonzero, &scalar::nonzero_positions};
        }
    }();
    return t;
}

} // namespace

std::size_t count_nonzero(std::span<const std::uint8_t> bytes) { return table().count_nonzero(bytes); }

std::size_t nonzero_positions(std::span<const std::uint8_t> bytes, std::uint32_t* out) {
    return table().nonzero_positions(bytes, out);
}

} // namespace bhc::simd
