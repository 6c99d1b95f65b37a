#pragma once

// Dense polynomial arithmetic over the prime field F_r (r < 2^63), constant
// term first, trailing zeros trimmed. Internal to the library.

#include <cstdint>
#include <random>
#include <vector>

namespace bhc::detail {

using ModPoly = std::vector<std::uint64_t>;

void trim(ModPoly& a);
inline int degree(const ModPoly& a) { return static_cast<int>(a.size()) - 1; } // -1 for zero

std::uint64_t horner_mod(const ModPoly& coeffs, std::uint64_t t, std::uint64_t r);

ModPoly make_monic(ModPoly a, std::uint64_t r);
ModPoly sub(ModPoly a, const ModPoly& b, std::uint64_t r);
ModPoly mul(const ModPoly& a, const ModPoly& b, std::uint64_t r);
/// Quotient and remainder of a by nonzero b.
void divmod(const ModPoly& a, const ModPoly& b, std::uint64_t r, ModPoly& quotient, ModPoly& remainder);
ModPoly rem(const ModPoly& a, const ModPoly& b, std::uint64_t r);
ModPoly quot(const ModPoly& a, const ModPoly& b, std::uint64_t r);
/// Monic gcd; gcd(0, 0) = 0.
ModPoly gcd(ModPoly a, ModPoly b, std::uint64_t r);
ModPoly derivative(const ModPoly& a, std::uint64_t r);

/// Arithmetic in F_r[x]/(f) for monic f of degree d >= 1. Products are formed
/// with 128-bit accumulators and folded back using a table of x^(d+i) mod f.
class QuotientRing {
public:
    QuotientRing(const ModPoly& monic_modulus, std::uint64_t r);

    ModPoly mul(const ModPoly& a, const ModPoly& b) const;
    ModPoly pow(ModPoly base, std::uint64_t e) const;
    /// x^e mod f
    ModPoly pow_x(std::uint64_t e) const;
    ModPoly reduce(const ModPoly& a) const;

private:
    ModPoly reduce_wide(std::vector<unsigned __int128>& acc) const;

    std::uint64_t r_;
    std::size_t d_;
    ModPoly f_;
    std::vector<ModPoly> fold_; // fold_[i] = x^(d+i) mod f, i in [0, d-1)
};

/// gcd(x^r - x, f) for monic f: the product of (x - a) over the distinct roots a.
ModPoly split_part(const ModPoly& monic_f, std::uint64_t r);

/// Roots of a monic, squarefree, completely split polynomial (equal-degree
/// splitting with random shifts), ascending.
std::vector<std::uint64_t> extract_roots(const ModPoly& split, std::uint64_t r, std::mt19937_64& rng);

/// Degrees of the irreducible factors of a monic squarefree f (distinct-degree
/// factorisation); one entry per factor.
std::vector<unsigned> factor_degrees(const ModPoly& monic_squarefree, std::uint64_t r);

} // namespace bhc::detail
