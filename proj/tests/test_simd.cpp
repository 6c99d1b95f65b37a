#include <doctest.h>

#include <random>
#include <vector>

#include "bhc/simd.hpp"

using namespace bhc;

namespace {

std::vector<std::uint8_t> random_bytes(std::size_t n, double density, std::mt19937_64& rng) {
    std::bernoulli_distribution on(density);
    std::vector<std::uint8_t> v(n);
    for (auto& b : v) b = on(rng) ? static_cast<std::uint8_t>(rng() | 1) : 0;
    return v;
}

void check_variant(std::size_t (*count)(std::span<const std::uint8_t>),
                   std::size_t (*positions)(std::span<const std::uint8_t>, std::uint32_t*)) {
    std::mt19937_64 rng(5);
    for (std::size_t n : {0u, 1u, 7u, 31u, 32u, 33u, 63u, 64u, 65u, 1000u, 4097u, 65536u}) {
        for (double d : {0.0, 0.01, 0.3, 1.0}) {
            auto bytes = random_bytes(n, d, rng);
            // unaligned view too
            for (std::size_t off : {0u, 1u, 3u}) {
                if (off > n) continue;
                std::span<const std::uint8_t> s(bytes.data() + off, n - off);
                REQUIRE(count(s) == simd::scalar::count_nonzero(s));
                std::vector<std::uint32_t> a(s.size() + 1), b(s.size() + 1);
                std::size_t na = positions(s, a.data()), nb = simd::scalar::nonzero_positions(s, b.data());
                REQUIRE(na == nb);
                a.resize(na);
                b.resize(nb);
                REQUIRE(a == b);
            }
        }
    }
}

} // namespace

TEST_CASE("scalar kernels are the reference") {
    std::vector<std::uint8_t> v{0, 1, 0, 255, 0, 0, 3};
    CHECK(simd::scalar::count_nonzero(v) == 3);
    std::uint32_t out[7];
    CHECK(simd::scalar::nonzero_positions(v, out) == 3);
    CHECK(out[0] == 1);
    CHECK(out[1] == 3);
    CHECK(out[2] == 6);
}

TEST_CASE("dispatched kernels match scalar") {
    MESSAGE("active ISA: " << simd::isa_name(simd::active_isa()));
    CHECK(simd::isa_supported(simd::Isa::scalar));
    check_variant(&simd::count_nonzero, &simd::nonzero_positions);
}

#if defined(__x86_64__) || defined(_M_X64)
TEST_CASE("avx2 kernels match scalar") {
    if (!simd::isa_supported(simd::Isa::avx2)) {
        MESSAGE("AVX2 not available; skipped");
        return;
    }
    check_variant(&simd::avx2::count_nonzero, &simd::avx2::nonzero_positions);
}
#endif

#if defined(__aarch64__) || defined(__ARM_NEON)
TEST_CASE("neon kernels match scalar") {
    check_variant(&simd::neon::count_nonzero, &simd::neon::nonzero_positions);
}
#endif
