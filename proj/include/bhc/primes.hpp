#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <span>
#include <vector>

#include "bhc/bigint.hpp"

namespace bhc {

// ---------------------------------------------------------------------------
// Word-size modular arithmetic

inline std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
    return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}
std::uint64_t powmod(std::uint64_t base, std::uint64_t exp, std::uint64_t m);
/// Inverse of a modulo m; requires gcd(a, m) == 1.
std::uint64_t invmod(std::uint64_t a, std::uint64_t m);
/// A square root of a modulo the odd prime p (Tonelli–Shanks); a must be a residue.
std::uint64_t sqrt_mod(std::uint64_t a, std::uint64_t p);

/// Montgomery form for an odd modulus below 2^64.
class Montgomery64 {
public:
    explicit Montgomery64(std::uint64_t n);

    std::uint64_t modulus() const { return n_; }
    std::uint64_t to_mont(std::uint64_t a) const;
    std::uint64_t from_mont(std::uint64_t a) const { return reduce(a); }
    std::uint64_t one() const { return one_; }
    std::uint64_t mul(std::uint64_t a, std::uint64_t b) const {
        return reduce(static_cast<unsigned __int128>(a) * b);
    }
    std::uint64_t add(std::uint64_t a, std::uint64_t b) const {
        std::uint64_t s = a + b;
        return (s < a || s >= n_) ? s - n_ : s;
    }
    std::uint64_t sub(std::uint64_t a, std::uint64_t b) const { return a >= b ? a - b : a + (n_ - b); }
    std::uint64_t pow(std::uint64_t a_mont, std::uint64_t e) const;

private:
    // t < n * 2^64; ninv_ = n^{-1} mod 2^64, so low(m * n) == low(t)
    std::uint64_t reduce(unsigned __int128 t) const {
        std::uint64_t m = static_cast<std::uint64_t>(t) * ninv_;
        std::uint64_t mhi = static_cast<std::uint64_t>((static_cast<unsigned __int128>(m) * n_) >> 64);
        std::uint64_t hi = static_cast<std::uint64_t>(t >> 64);
        return hi >= mhi ? hi - mhi : hi - mhi + n_;
    }

    std::uint64_t n_;
    std::uint64_t ninv_;
    std::uint64_t r2_;   // 2^128 mod n
    std::uint64_t one_;
};

// ---------------------------------------------------------------------------
// Prime tables and sieving

/// Immutable ascending list of every prime up to `limit`.
class PrimeTable {
public:
    PrimeTable() = default;
    PrimeTable(std::uint64_t limit, std::vector<std::uint64_t> primes)
        : limit_(limit), primes_(std::move(primes)) {}

    std::uint64_t limit() const { return limit_; }
    std::span<const std::uint64_t> primes() const { return primes_; }
    std::size_t size() const { return primes_.size(); }
    bool empty() const { return primes_.empty(); }
    std::uint64_t operator[](std::size_t i) const { return primes_[i]; }
    auto begin() const { return primes_.begin(); }
    auto end() const { return primes_.end(); }

    /// Membership test for n <= limit().
    bool contains(std::uint64_t n) const;

private:
    std::uint64_t limit_ = 0;
    std::vector<std::uint64_t> primes_;
};

/// Number of entries (odd integers) per sieve segment.
inline constexpr std::size_t kSieveSegmentEntries = std::size_t{1} << 20;
inline constexpr std::uint64_t kMaxSieveLimit = std::uint64_t{1} << 40;

struct SieveOptions {
    unsigned threads = 1;
    /// Upper bound on the bytes a materialised table may occupy.
    std::uint64_t memory_budget_bytes = std::uint64_t{4} << 30;
};

/// All primes <= limit. Throws DomainError for limit < 2, ResourceError when
/// the table would exceed the memory budget or limit > 2^40.
PrimeTable sieve_primes(std::uint64_t limit, const SieveOptions& options = {});

/// Streams the primes of [lo, hi) in ascending order, one segment at a time.
void for_each_prime_block(std::uint64_t lo, std::uint64_t hi,
                          const std::function<void(std::span<const std::uint64_t>)>& sink);

/// Exact pi(x) by segmented sieving.
std::uint64_t prime_count(std::uint64_t x, unsigned threads = 1);

// ---------------------------------------------------------------------------
// Primality

enum class Primality { composite, prime, probable_prime };

/// Deterministic for n < 2^64.
bool is_prime_u64(std::uint64_t n);
/// Tiered test: deterministic Miller–Rabin below 3.317e24, BPSW above.
Primality primality(const BigInt& n);
/// True for prime and probable_prime verdicts.
bool is_prime(const BigInt& n);
inline bool is_prime(std::uint64_t n) { return is_prime_u64(n); }

/// Upper end of the range where the first 13 prime bases are a proof.
const BigInt& deterministic_mr_limit();

// ---------------------------------------------------------------------------
// Factorisation

class Factorization {
public:
    Factorization() = default;
    explicit Factorization(BigInt n) : n_(std::move(n)) {}

    const BigInt& n() const { return n_; }
    const std::map<BigInt, unsigned>& factors() const { return factors_; }
    void add(const BigInt& p, unsigned e = 1) { factors_[p] += e; }

    unsigned big_omega() const;
    BigInt recompose() const;
    bool is_prime_power() const { return factors_.size() == 1; }

private:
    BigInt n_ = 1;
    std::map<BigInt, unsigned> factors_;
};

/// Trial division by primes <= 10^6, then Brent–Pollard rho. n >= 1.
Factorization factorize(const BigInt& n);
inline Factorization factorize(std::uint64_t n) { return factorize(big_from_u64(n)); }

/// Omega(n): prime factors with multiplicity; big_omega(1) == 0.
unsigned big_omega(const BigInt& n);
inline unsigned big_omega(std::uint64_t n) { return big_omega(big_from_u64(n)); }

// ---------------------------------------------------------------------------
// Jacobi symbol

/// (q / p) for odd p >= 3. Throws DomainError for even p.
int jacobi(std::int64_t q, std::uint64_t p);
int jacobi(const BigInt& q, std::uint64_t p);

} // namespace bhc
