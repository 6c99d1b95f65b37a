#include <doctest.h>

#include <random>

#include "bhc/errors.hpp"
#include "bhc/primes.hpp"
#include "oracle.hpp"

using namespace bhc;

TEST_CASE("sieve_primes small tables") {
    auto t10 = sieve_primes(10);
    CHECK(std::vector<std::uint64_t>(t10.begin(), t10.end()) == std::vector<std::uint64_t>{2, 3, 5, 7});
    auto t2 = sieve_primes(2);
    CHECK(t2.size() == 1);
    CHECK(t2[0] == 2);
    CHECK_THROWS_AS(sieve_primes(1), DomainError);
    CHECK_THROWS_AS(sieve_primes(kMaxSieveLimit + 1), ResourceError);
    SieveOptions tight;
    tight.memory_budget_bytes = 1000;
    CHECK_THROWS_AS(sieve_primes(1'000'000, tight), ResourceError);
}

TEST_CASE("is_prime agrees with the sieve below 1e6") {
    const std::uint64_t n = 1'000'000;
    auto table = sieve_primes(n);
    std::vector<bool> in(n + 1, false);
    for (auto p : table) in[p] = true;
    for (std::uint64_t i = 0; i <= n; ++i) REQUIRE(is_prime_u64(i) == in[i]);
    for (std::uint64_t i = 0; i < 20'000; ++i) REQUIRE(oracle::trial_prime(i) == in[i]);
}

TEST_CASE("threaded sieve matches sequential sieve") {
    SieveOptions four;
    four.threads = 4;
    auto a = sieve_primes(5'000'000), b = sieve_primes(5'000'000, four);
    CHECK(std::equal(a.begin(), a.end(), b.begin(), b.end()));
}

TEST_CASE("prime_count") {
    CHECK(prime_count(10) == 4);
    CHECK(prime_count(100) == 25);
    CHECK(prime_count(1) == 0);
    CHECK(prime_count(0) == 0);
    CHECK(prime_count(10'000'000) == 664579);
    CHECK(prime_count(10'000'000, 3) == 664579);
    CHECK(sieve_primes(10'000'000).size() == 664579);
}

TEST_CASE("for_each_prime_block streams every prime once") {
    std::uint64_t count = 0, last = 0;
    bool ordered = true;
    for_each_prime_block(1'000'000, 3'000'000, [&](std::span<const std::uint64_t> b) {
        for (auto p : b) {
            ordered = ordered && p > last;
            last = p;
            ++count;
        }
    });
    CHECK(ordered);
    CHECK(count == prime_count(3'000'000 - 1) - prime_count(1'000'000 - 1));
}

TEST_CASE("primality tiers") {
    CHECK(is_prime(BigInt(13)));
    CHECK_FALSE(is_prime(BigInt(1)));
    CHECK_FALSE(is_prime(BigInt(0)));
    const std::uint64_t v = 48ULL * 1'000'000 * 1'000'000 - 12ULL * 1'000'000 + 1;
    CHECK(v == 47999988000001ULL);
    CHECK(is_prime_u64(v) == oracle::trial_prime(v));
    // strong pseudoprimes to many bases
    CHECK_FALSE(is_prime_u64(3215031751ULL));
    CHECK_FALSE(is_prime_u64(3825123056546413051ULL));
    CHECK(is_prime_u64(18446744073709551557ULL));
    CHECK(primality(BigInt("18446744073709551629")) == Primality::prime);     // 2^64 + 13
    CHECK(primality(BigInt("3317044064679887385961981")) == Primality::composite);
    BigInt m127 = (BigInt(1) << 127) - 1;
    CHECK(primality(m127) == Primality::probable_prime);
    CHECK(primality(m127 * 3) == Primality::composite);
    std::mt19937_64 rng(7);
    for (int i = 0; i < 200; ++i) {
        BigInt n = big_from_u64(rng()) * big_from_u64(rng() | 1) + 1;
        CHECK(is_prime(n) == (mpz_probab_prime_p(n.get_mpz_t(), 40) != 0));
    }
}

TEST_CASE("factorize examples") {
    auto f60 = factorize(60);
    CHECK(f60.factors() == std::map<BigInt, unsigned>{{2, 2}, {3, 1}, {5, 1}});
    CHECK(factorize(1).factors().empty());
    auto f840 = factorize(29 * 29 - 1);
    CHECK(f840.factors() == std::map<BigInt, unsigned>{{2, 3}, {3, 1}, {5, 1}, {7, 1}});
    CHECK(f840.big_omega() == 6);
    CHECK(big_omega(168) == 5);
    CHECK(big_omega(360) == 6);
    CHECK(big_omega(1) == 0);
    CHECK(big_omega(1'000'003) == 1);
    CHECK_THROWS_AS(factorize(BigInt(0)), DomainError);
}

TEST_CASE("big_omega is additive") {
    std::vector<unsigned> om(10'001);
    for (std::uint64_t a = 1; a <= 10'000; ++a) om[a] = big_omega(a);
    std::mt19937_64 rng(11);
    for (int i = 0; i < 20'000; ++i) {
        std::uint64_t a = rng() % 10'000 + 1, b = rng() % 10'000 + 1;
        REQUIRE(big_omega(a * b) == om[a] + om[b]);
    }
}

TEST_CASE("factorize recomposes random 64-bit n") {
    std::mt19937_64 rng(2024);
    for (int i = 0; i < 10'000; ++i) {
        std::uint64_t n = rng() | 1;
        if (i % 3 == 0) n >>= (rng() % 40);
        if (n == 0) n = 1;
        Factorization f = factorize(n);
        REQUIRE(f.recompose() == big_from_u64(n));
        for (const auto& [p, e] : f.factors()) REQUIRE(is_prime(p));
    }
    BigInt semi = BigInt("1000000000039") * BigInt("1000000000000000003");
    auto f = factorize(semi);
    CHECK(f.big_omega() == 2);
    CHECK(f.recompose() == semi);
}

TEST_CASE("jacobi examples and Euler criterion") {
    CHECK(jacobi(-3, 7) == 1);
    CHECK(jacobi(-3, 5) == -1);
    CHECK(jacobi(0, 3) == 0);
    CHECK_THROWS_AS(jacobi(3, 8), DomainError);
    for (std::uint64_t p = 3; p < 1000; p += 2) {
        if (!oracle::trial_prime(p)) continue;
        for (std::uint64_t q = 1; q < p; ++q) {
            std::uint64_t e = powmod(q, (p - 1) / 2, p);
            int euler = e == 1 ? 1 : e == p - 1 ? -1 : 0;
            REQUIRE(jacobi(static_cast<std::int64_t>(q), p) == euler);
            REQUIRE(jacobi(big_from_u64(q), p) == euler);
        }
    }
}

TEST_CASE("jacobi(-3, p) = 1 iff p = 1 mod 3") {
    auto table = sieve_primes(100'000);
    for (auto p : table) {
        if (p <= 3) continue;
        REQUIRE((jacobi(-3, p) == 1) == (p % 3 == 1));
    }
}

TEST_CASE("modular helpers") {
    CHECK(mulmod(~0ULL, ~0ULL, 1'000'000'007ULL) == static_cast<std::uint64_t>((static_cast<unsigned __int128>(~0ULL) * ~0ULL) % 1'000'000'007ULL));
    CHECK(invmod(3, 7) == 5);
    for (std::uint64_t p : {7ULL, 13ULL, 1'000'000'007ULL, 998244353ULL}) {
        for (std::uint64_t a = 1; a < 50; ++a) {
            if (jacobi(static_cast<std::int64_t>(a), p) != 1) continue;
            std::uint64_t s = sqrt_mod(a, p);
            CHECK(mulmod(s, s, p) == a % p);
        }
    }
    Montgomery64 m(1'000'000'007ULL);
    CHECK(m.from_mont(m.pow(m.to_mont(3), 1'000'000'006ULL)) == 1);
}
