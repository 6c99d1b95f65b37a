#include "bhc/primes.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <cstring>
#include <numeric>
#include <string>

#include "bhc/errors.hpp"
#include "bhc/parallel.hpp"
#include "bhc/simd.hpp"

namespace bhc {

// ---------------------------------------------------------------------------
// Modular arithmetic

std::uint64_t powmod(std::uint64_t base, std::uint64_t exp, std::uint64_t m) {
    if (m == 1) return 0;
    std::uint64_t result = 1;
    base %= m;
    while (exp) {
        if (exp & 1) result = mulmod(result, base, m);
        base = mulmod(base, base, m);
        exp >>= 1;
    }
    return result;
}

std::uint64_t invmod(std::uint64_t a, std::uint64_t m) {
    __int128 g = a % m, h = m, x0 = 1, x1 = 0;
    while (h != 0) {
        __int128 q = g / h;
        __int128 t = g - q * h;
        g = h;
        h = t;
        t = x0 - q * x1;
        x0 = x1;
        x1 = t;
    }
    if (g != 1) throw DomainError("invmod: argument not invertible");
    x0 %= static_cast<__int128>(m);
    if (x0 < 0) x0 += m;
    return static_cast<std::uint64_t>(x0);
}

std::uint64_t sqrt_mod(std::uint64_t a, std::uint64_t p) {
    a %= p;
    if (a == 0 || p == 2) return a;
    if (p % 4 == 3) return powmod(a, (p + 1) / 4, p);
    // p - 1 = q * 2^s
    std::uint64_t q = p - 1;
    unsigned s = static_cast<unsigned>(std::countr_zero(q));
    q >>= s;
    std::uint64_t z = 2;
    while (powmod(z, (p - 1) / 2, p) != p - 1) ++z;
    std::uint64_t c = powmod(z, q, p);
    std::uint64_t x = powmod(a, (q + 1) / 2, p);
    std::uint64_t t = powmod(a, q, p);
    unsigned m = s;
    while (t != 1) {
        unsigned i = 0;
        std::uint64_t t2 = t;
        while (t2 != 1) {
            t2 = mulmod(t2, t2, p);
            if (++i == m) throw DomainError("sqrt_mod: not a quadratic residue");
        }
        std::uint64_t b = c;
        for (unsigned j = 0; j + i + 1 < m; ++j) b = mulmod(b, b, p);
        x = mulmod(x, b, p);
        c = mulmod(b, b, p);
        t = mulmod(t, c, p);
        m = i;
    }
    return x;
}

Montgomery64::Montgomery64(std::uint64_t n) : n_(n) {
    if ((n & 1) == 0) throw DomainError("Montgomery64: modulus must be odd");
    std::uint64_t inv = n; // correct to 3 bits
    for (int i = 0; i < 5; ++i) inv *= 2 - n * inv;
    ninv_ = inv;
    one_ = static_cast<std::uint64_t>((static_cast<unsigned __int128>(1) << 64) % n);
    r2_ = mulmod(one_, one_, n);
}

std::uint64_t Montgomery64::to_mont(std::uint64_t a) const { return mul(a % n_, r2_); }

std::uint64_t Montgomery64::pow(std::uint64_t a, std::uint64_t e) const {
    std::uint64_t r = one_;
    while (e) {
        if (e & 1) r = mul(r, a);
        a = mul(a, a);
        e >>= 1;
    }
    return r;
}

// ---------------------------------------------------------------------------
// Sieving

namespace {

constexpr std::array<std::uint32_t, 5> kPresievePrimes{3, 5, 7, 11, 13};
constexpr std::uint64_t kPresievePeriod = 3 * 5 * 7 * 11 * 13; // in odd-index space

// pattern[g] == 1 iff the odd number 2g+1 is coprime to 3*5*7*11*13; doubled
// so that any window of length <= period starts at a contiguous copy.
const std::vector<std::uint8_t>& presieve_pattern() {
    static const std::vector<std::uint8_t> pattern = [] {
        std::vector<std::uint8_t> p(2 * kPresievePeriod, 1);
        for (std::uint64_t g = 0; g < 2 * kPresievePeriod; ++g) {
            std::uint64_t v = 2 * g + 1;
            for (auto q : kPresievePrimes)
                if (v % q == 0) p[g] = 0;
        }
        return p;
    }();
    return pattern;
}

// Odd primes up to `limit` by a plain byte sieve; used for base primes only.
std::vector<std::uint32_t> small_odd_primes(std::uint64_t limit) {
    std::vector<std::uint32_t> out;
    if (limit < 3) return out;
    std::vector<std::uint8_t> composite(limit / 2 + 1, 0);
    for (std::uint64_t i = 3; i * i <= limit; i += 2)
        if (!composite[i / 2])
            for (std::uint64_t j = i * i; j <= limit; j += 2 * i) composite[j / 2] = 1;
    for (std::uint64_t i = 3; i <= limit; i += 2)
        if (!composite[i / 2]) out.push_back(static_cast<std::uint32_t>(i));
    return out;
}

std::uint64_t isqrt(std::uint64_t n) {
    auto r = static_cast<std::uint64_t>(std::sqrt(static_cast<long double>(n)));
    while (r * r > n) --r;
    while ((r + 1) * (r + 1) <= n) ++r;
    return r;
}

// Sieves the odd numbers in [lo, hi) one segment at a time. Entry i of a
// segment stands for seg_lo + 2i; after `sieve` the entry is nonzero iff the
// number is an odd prime.
class OddSegmentSieve {
public:
    OddSegmentSieve(std::uint64_t hi) : base_(small_odd_primes(hi == 0 ? 0 : isqrt(hi - 1))), bytes_(kSieveSegmentEntries) {}

    // Sieves odd numbers in [seg_lo, seg_lo + 2*len), seg_lo odd.
    std::span<const std::uint8_t> sieve(std::uint64_t seg_lo, std::size_t len) {
        const auto& pattern = presieve_pattern();
        std::uint8_t* seg = bytes_.data();
        std::uint64_t phase = ((seg_lo - 1) / 2) % kPresievePeriod;
        std::size_t filled = 0;
        while (filled < len) {
            std::size_t n = std::min<std::size_t>(len - filled, kPresievePeriod);
            std::memcpy(seg + filled, pattern.data() + phase, n);
            filled += n;
            phase = (phase + n) % kPresievePeriod;
        }
        const std::uint64_t seg_hi = seg_lo + 2 * len; // exclusive
        for (std::uint32_t p : base_) {
            if (p <= 13) continue;
            std::uint64_t pp = std::uint64_t{p} * p;
            if (pp >= seg_hi) break;
            std::uint64_t start = std::max(pp, (seg_lo + p - 1) / p * p);
            if ((start & 1) == 0) start += p;
            for (std::uint64_t i = (start - seg_lo) / 2; i < len; i += p) seg[i] = 0;
        }
        // 1 is not prime; the presieve primes themselves were cleared.
        if (seg_lo == 1) seg[0] = 0;
        for (auto q : kPresievePrimes)
            if (q >= seg_lo && q < seg_hi) seg[(q - seg_lo) / 2] = 1;
        return {seg, len};
    }

private:
    std::vector<std::uint32_t> base_;
    std::vector<std::uint8_t> bytes_;
};

// Calls visit(seg_lo, bytes) for successive odd segments covering [lo, hi).
template <class Visit>
void sieve_odd_range(std::uint64_t lo, std::uint64_t hi, Visit&& visit) {
    if (hi <= lo) return;
    std::uint64_t first = lo | 1;
    if (first >= hi) return;
    OddSegmentSieve sieve(hi);
    for (std::uint64_t seg_lo = first; seg_lo < hi;) {
        std::uint64_t remaining = (hi - seg_lo + 1) / 2; // odd numbers left
        std::size_t len = static_cast<std::size_t>(std::min<std::uint64_t>(remaining, kSieveSegmentEntries));
        visit(seg_lo, sieve.sieve(seg_lo, len));
        seg_lo += 2 * len;
    }
}

} // namespace

bool PrimeTable::contains(std::uint64_t n) const { return std::binary_search(primes_.begin(), primes_.end(), n); }

void for_each_prime_block(std::uint64_t lo, std::uint64_t hi,
                          const std::function<void(std::span<const std::uint64_t>)>& sink) {
    if (hi <= lo) return;
    std::vector<std::uint32_t> positions(kSieveSegmentEntries);
    std::vector<std::uint64_t> values;
    values.reserve(kSieveSegmentEntries / 4);
    bool two_pending = lo <= 2 && 2 < hi;
    sieve_odd_range(lo, hi, [&](std::uint64_t seg_lo, std::span<const std::uint8_t> bytes) {
        std::size_t n = simd::nonzero_positions(bytes, positions.data());
        values.clear();
        if (two_pending) {
            values.push_back(2);
            two_pending = false;
        }
        for (std::size_t i = 0; i < n; ++i) values.push_back(seg_lo + 2 * std::uint64_t{positions[i]});
        if (!values.empty()) sink(values);
    });
    if (two_pending) {
        const std::uint64_t two = 2;
        sink(std::span<const std::uint64_t>(&two, 1));
    }
}

namespace {

// Equal-width work units over [0, limit], aligned to whole segments.
constexpr std::uint64_t kRangeWidth = 2 * kSieveSegmentEntries * 8;

} // namespace

PrimeTable sieve_primes(std::uint64_t limit, const SieveOptions& options) {
    if (limit < 2) throw DomainError("sieve_primes: limit must be at least 2 (table would be empty)");
    if (limit > kMaxSieveLimit) throw ResourceError("sieve_primes: limit exceeds 2^40");
    const double estimate = limit < 100 ? 25.0 : 1.26 * static_cast<double>(limit) / std::log(static_cast<double>(limit));
    if (estimate * sizeof(std::uint64_t) > static_cast<double>(options.memory_budget_bytes))
        throw ResourceError("sieve_primes: table for limit " + std::to_string(limit) + " exceeds memory budget");

    const std::uint64_t hi = limit + 1;
    const std::size_t ranges = static_cast<std::size_t>((hi + kRangeWidth - 1) / kRangeWidth);
    std::vector<std::vector<std::uint64_t>> parts(ranges);
    parallel_for(ranges, options.threads, [&](std::size_t i) {
        std::uint64_t lo = i * kRangeWidth;
        std::uint64_t end = std::min(hi, lo + kRangeWidth);
        for_each_prime_block(lo, end, [&](std::span<const std::uint64_t> block) {
            parts[i].insert(parts[i].end(), block.begin(), block.end());
        });
    });
    std::size_t total = 0;
    for (const auto& p : parts) total += p.size();
    std::vector<std::uint64_t> primes;
    primes.reserve(total);
    for (auto& p : parts) {
        primes.insert(primes.end(), p.begin(), p.end());
        std::vector<std::uint64_t>().swap(p);
    }
    return PrimeTable(limit, std::move(primes));
}

std::uint64_t prime_count(std::uint64_t x, unsigned threads) {
    if (x < 2) return 0;
    if (x > kMaxSieveLimit) throw ResourceError("prime_count: x exceeds 2^40");
    const std::uint64_t hi = x + 1;
    const std::size_t ranges = static_cast<std::size_t>((hi + kRangeWidth - 1) / kRangeWidth);
    std::vector<std::uint64_t> counts(ranges, 0);
    parallel_for(ranges, threads, [&](std::size_t i) {
        std::uint64_t lo = i * kRangeWidth;
        std::uint64_t end = std::min(hi, lo + kRangeWidth);
        sieve_odd_range(lo, end, [&](std::uint64_t, std::span<const std::uint8_t> bytes) {
            counts[i] += simd::count_nonzero(bytes);
        });
    });
    return 1 + std::accumulate(counts.begin(), counts.end(), std::uint64_t{0}); // +1 for the prime 2
}

// ---------------------------------------------------------------------------
// Primality

namespace {

constexpr std::array<std::uint32_t, 13> kFirstPrimes{2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41};

bool strong_probable_prime(const Montgomery64& mont, std::uint64_t n, std::uint64_t base) {
    std::uint64_t d = n - 1;
    unsigned s = static_cast<unsigned>(std::countr_zero(d));
    d >>= s;
    base %= n;
    if (base == 0) return true;
    const std::uint64_t one = mont.one();
    const std::uint64_t minus_one = mont.sub(0, one);
    std::uint64_t x = mont.pow(mont.to_mont(base), d);
    if (x == one || x == minus_one) return true;
    for (unsigned r = 1; r < s; ++r) {
        x = mont.mul(x, x);
        if (x == minus_one) return true;
        if (x == one) return false;
    }
    return false;
}

} // namespace

bool is_prime_u64(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint32_t p : kFirstPrimes) {
        if (n == p) return true;
        if (n % p == 0) return false;
    }
    if (n < 43 * 43) return true;

    // Published deterministic witness sets by range.
    static constexpr std::uint64_t b2[] = {2, 3};
    static constexpr std::uint64_t b3[] = {2, 3, 5};
    static constexpr std::uint64_t b4[] = {2, 3, 5, 7};
    static constexpr std::uint64_t b5[] = {2, 3, 5, 7, 11};
    static constexpr std::uint64_t b6[] = {2, 3, 5, 7, 11, 13};
    static constexpr std::uint64_t b7[] = {2, 3, 5, 7, 11, 13, 17};
    static constexpr std::uint64_t b9[] = {2, 3, 5, 7, 11, 13, 17, 19, 23};
    static constexpr std::uint64_t b12[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
    std::span<const std::uint64_t> bases;
    if (n < 1'373'653ULL) bases = b2;
    else if (n < 25'326'001ULL) bases = b3;
    else if (n < 3'215'031'751ULL) bases = b4;
    else if (n < 2'152'302'898'747ULL) bases = b5;
    else if (n < 3'474'749'660'383ULL) bases = b6;
    else if (n < 341'550'071'728'321ULL) bases = b7;
    else if (n < 3'825'123'056'546'413'051ULL) bases = b9;
    else bases = b12;

    Montgomery64 mont(n);
    for (std::uint64_t a : bases)
        if (!strong_probable_prime(mont, n, a)) return false;
    return true;
}

const BigInt& deterministic_mr_limit() {
    static const BigInt limit("3317044064679887385961981", 10);
    return limit;
}

namespace {

bool mpz_strong_probable_prime(const BigInt& n, unsigned long base) {
    BigInt d = n - 1;
    mp_bitcnt_t s = mpz_scan1(d.get_mpz_t(), 0);
    mpz_fdiv_q_2exp(d.get_mpz_t(), d.get_mpz_t(), s);
    BigInt x;
    BigInt b(base);
    mpz_powm(x.get_mpz_t(), b.get_mpz_t(), d.get_mpz_t(), n.get_mpz_t());
    const BigInt minus_one = n - 1;
    if (x == 1 || x == minus_one) return true;
    for (mp_bitcnt_t r = 1; r < s; ++r) {
        x = x * x % n;
        if (x == minus_one) return true;
        if (x == 1) return false;
    }
    return false;
}

// Halves v modulo odd n.
void half_mod(BigInt& v, const BigInt& n) {
    if (mpz_odd_p(v.get_mpz_t())) v += n;
    mpz_fdiv_q_2exp(v.get_mpz_t(), v.get_mpz_t(), 1);
}

// Strong Lucas probable-prime test with Selfridge's parameter choice.
bool strong_lucas_probable_prime(const BigInt& n) {
    if (mpz_perfect_square_p(n.get_mpz_t())) return false;
    long D = 5;
    for (;;) {
        BigInt d(D);
        int j = mpz_jacobi(d.get_mpz_t(), n.get_mpz_t());
        if (j == -1) break;
        if (j == 0 && abs(BigInt(D)) != n) return false;
        D = D > 0 ? -(D + 2) : -D + 2;
    }
    const long P = 1;
    const long Q = (1 - D) / 4;
    BigInt delta = n + 1;
    mp_bitcnt_t s = mpz_scan1(delta.get_mpz_t(), 0);
    BigInt d;
    mpz_fdiv_q_2exp(d.get_mpz_t(), delta.get_mpz_t(), s);

    BigInt U = 1, V = P, Qk = Q;
    Qk %= n;
    if (Qk < 0) Qk += n;
    const BigInt Dn = [&] { BigInt t(D); t %= n; if (t < 0) t += n; return t; }();
    const BigInt Qn = Qk;
    const std::size_t bits = mpz_sizeinbase(d.get_mpz_t(), 2);
    for (std::size_t i = bits - 1; i-- > 0;) {
        // double
        U = U * V % n;
        V = (V * V - 2 * Qk) % n;
        if (V < 0) V += n;
        Qk = Qk * Qk % n;
        if (mpz_tstbit(d.get_mpz_t(), i)) {
            BigInt u2 = P * U + V;
            BigInt v2 = Dn * U + P * V;
            half_mod(u2, n);
            half_mod(v2, n);
            U = u2 % n;
            V = v2 % n;
            Qk = Qk * Qn % n;
        }
    }
    if (U == 0 || V == 0) return true;
    for (mp_bitcnt_t r = 1; r < s; ++r) {
        V = (V * V - 2 * Qk) % n;
        if (V < 0) V += n;
        if (V == 0) return true;
        Qk = Qk * Qk % n;
    }
    return false;
}

} // namespace

Primality primality(const BigInt& n) {
    if (auto small = big_to_u64(n)) return is_prime_u64(*small) ? Primality::prime : Primality::composite;
    if (sgn(n) < 0) return Primality::composite;
    for (unsigned long p = 2; p < 1000; p += (p == 2 ? 1 : 2))
        if (mpz_divisible_ui_p(n.get_mpz_t(), p)) return Primality::composite;
    if (n < deterministic_mr_limit()) {
        for (auto a : kFirstPrimes)
            if (!mpz_strong_probable_prime(n, a)) return Primality::composite;
        return Primality::prime;
    }
    if (!mpz_strong_probable_prime(n, 2)) return Primality::composite;
    return strong_lucas_probable_prime(n) ? Primality::probable_prime : Primality::composite;
}

bool is_prime(const BigInt& n) { return primality(n) != Primality::composite; }

// ---------------------------------------------------------------------------
// Factorisation

namespace {

constexpr std::uint64_t kTrialBound = 1'000'000;

struct TrialDivisor {
    std::uint64_t p;
    std::uint64_t inverse; // p^{-1} mod 2^64
    std::uint64_t limit;   // floor((2^64 - 1) / p)
};

// n is divisible by odd p iff n * p^{-1} mod 2^64 <= (2^64 - 1) / p.
const std::vector<TrialDivisor>& trial_divisors() {
    static const std::vector<TrialDivisor> table = [] {
        std::vector<TrialDivisor> t;
        for (std::uint32_t p : small_odd_primes(kTrialBound)) {
            std::uint64_t inv = p;
            for (int i = 0; i < 5; ++i) inv *= 2 - p * inv;
            t.push_back({p, inv, ~std::uint64_t{0} / p});
        }
        return t;
    }();
    return table;
}

std::uint64_t gcd_u64(std::uint64_t a, std::uint64_t b) { return std::gcd(a, b); }

// A nontrivial factor of the odd composite n (Brent's variant of Pollard rho).
std::uint64_t rho_u64(std::uint64_t n) {
    Montgomery64 mont(n);
    for (std::uint64_t c = 1;; ++c) {
        const std::uint64_t cm = mont.to_mont(c);
        auto f = [&](std::uint64_t x) { return mont.add(mont.mul(x, x), cm); };
        std::uint64_t y = mont.to_mont(2), x = y, ys = y, q = mont.one(), g = 1;
        constexpr std::uint64_t m = 128;
        for (std::uint64_t r = 1; g == 1; r <<= 1) {
            x = y;
            for (std::uint64_t i = 0; i < r; ++i) y = f(y);
            for (std::uint64_t k = 0; k < r && g == 1; k += m) {
                ys = y;
                for (std::uint64_t i = 0; i < std::min(m, r - k); ++i) {
                    y = f(y);
                    q = mont.mul(q, x > y ? x - y : y - x);
                }
                g = gcd_u64(mont.from_mont(q), n);
            }
            if (r > (std::uint64_t{1} << 40)) break;
        }
        if (g == n) {
            do {
                ys = f(ys);
                g = gcd_u64(x > ys ? mont.from_mont(x - ys) : mont.from_mont(ys - x), n);
            } while (g == 1);
        }
        if (g != n && g != 1) return g;
    }
}

void factor_u64_rec(std::uint64_t n, Factorization& out) {
    if (n == 1) return;
    if (is_prime_u64(n)) {
        out.add(big_from_u64(n));
        return;
    }
    if ((n & 1) == 0) {
        out.add(2);
        factor_u64_rec(n / 2, out);
        return;
    }
    std::uint64_t d = rho_u64(n);
    factor_u64_rec(d, out);
    factor_u64_rec(n / d, out);
}

BigInt rho_big(const BigInt& n) {
    for (unsigned long c = 1;; ++c) {
        auto f = [&](const BigInt& x) { return BigInt((x * x + c) % n); };
        BigInt y = 2, x = 2, ys = 2, q = 1, g = 1;
        constexpr unsigned long m = 64;
        for (unsigned long r = 1; g == 1; r <<= 1) {
            x = y;
            for (unsigned long i = 0; i < r; ++i) y = f(y);
            for (unsigned long k = 0; k < r && g == 1; k += m) {
                ys = y;
                for (unsigned long i = 0; i < std::min(m, r - k); ++i) {
                    y = f(y);
                    q = q * abs(BigInt(x - y)) % n;
                }
                mpz_gcd(g.get_mpz_t(), q.get_mpz_t(), n.get_mpz_t());
            }
        }
        if (g == n) {
            do {
                ys = f(ys);
                BigInt diff = abs(BigInt(x - ys));
                mpz_gcd(g.get_mpz_t(), diff.get_mpz_t(), n.get_mpz_t());
            } while (g == 1);
        }
        if (g != n) return g;
    }
}

void factor_big_rec(const BigInt& n, Factorization& out) {
    if (n == 1) return;
    if (auto small = big_to_u64(n)) {
        factor_u64_rec(*small, out);
        return;
    }
    if (is_prime(n)) {
        out.add(n);
        return;
    }
    BigInt d = rho_big(n);
    factor_big_rec(d, out);
    factor_big_rec(BigInt(n / d), out);
}

} // namespace

unsigned Factorization::big_omega() const {
    unsigned total = 0;
    for (const auto& [p, e] : factors_) total += e;
    return total;
}

BigInt Factorization::recompose() const {
    BigInt r = 1;
    for (const auto& [p, e] : factors_) {
        BigInt pe;
        mpz_pow_ui(pe.get_mpz_t(), p.get_mpz_t(), e);
        r *= pe;
    }
    return r;
}

Factorization factorize(const BigInt& n) {
    if (sgn(n) <= 0) throw DomainError("factorize: n must be positive");
    Factorization out(n);
    if (auto small = big_to_u64(n)) {
        std::uint64_t m = *small;
        if (m > 1) {
            unsigned twos = static_cast<unsigned>(std::countr_zero(m));
            if (twos) out.add(2, twos);
            m >>= twos;
        }
        for (const auto& d : trial_divisors()) {
            if (d.p * d.p > m) break;
            unsigned e = 0;
            while (m * d.inverse <= d.limit) {
                m *= d.inverse; // exact division
                ++e;
            }
            if (e) out.add(big_from_u64(d.p), e);
        }
        factor_u64_rec(m, out);
        return out;
    }
    BigInt m = n;
    if (unsigned long twos = mpz_scan1(m.get_mpz_t(), 0)) {
        out.add(2, static_cast<unsigned>(twos));
        mpz_fdiv_q_2exp(m.get_mpz_t(), m.get_mpz_t(), twos);
    }
    for (const auto& d : trial_divisors()) {
        if (auto small = big_to_u64(m); small && d.p * d.p > *small) break;
        unsigned e = 0;
        while (mpz_divisible_ui_p(m.get_mpz_t(), d.p)) {
            mpz_divexact_ui(m.get_mpz_t(), m.get_mpz_t(), d.p);
            ++e;
        }
        if (e) out.add(big_from_u64(d.p), e);
    }
    factor_big_rec(m, out);
    return out;
}

unsigned big_omega(const BigInt& n) { return factorize(n).big_omega(); }

// ---------------------------------------------------------------------------
// Jacobi symbol (binary algorithm)

namespace {

int jacobi_reduced(std::uint64_t a, std::uint64_t n) {
    int t = 1;
    while (a != 0) {
        unsigned z = static_cast<unsigned>(std::countr_zero(a));
        a >>= z;
        if ((z & 1) && ((n & 7) == 3 || (n & 7) == 5)) t = -t;
        std::swap(a, n);
        if ((a & 3) == 3 && (n & 3) == 3) t = -t;
        a %= n;
    }
    return n == 1 ? t : 0;
}

} // namespace

int jacobi(std::int64_t q, std::uint64_t p) {
    if ((p & 1) == 0) throw DomainError("jacobi: modulus must be odd");
    std::int64_t r = static_cast<std::int64_t>(static_cast<__int128>(q) % static_cast<__int128>(p));
    std::uint64_t a = r < 0 ? static_cast<std::uint64_t>(r + static_cast<__int128>(p)) : static_cast<std::uint64_t>(r);
    return jacobi_reduced(a, p);
}

int jacobi(const BigInt& q, std::uint64_t p) {
    if ((p & 1) == 0) throw DomainError("jacobi: modulus must be odd");
    return jacobi_reduced(big_mod_u64(q, p), p);
}

} // namespace bhc
