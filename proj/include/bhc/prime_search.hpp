#pragma once

#include <atomic>
#include <chrono>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "bhc/poly.hpp"
#include "bhc/primes.hpp"

namespace bhc {

struct SearchConfig {
    std::uint64_t segment_length = std::uint64_t{1} << 22;
    std::uint64_t sieve_prime_bound = 100'000;
    unsigned thread_count = 1;
    bool collect_hits = false;
    std::uint64_t hit_limit = 1'000'000;
    std::optional<std::filesystem::path> checkpoint_path;
    /// Polled between batches of segments; a set flag ends the run early.
    const std::atomic<bool>* stop = nullptr;
    std::optional<std::chrono::milliseconds> time_limit;
    /// Polled with the stop flag.
    std::function<bool()> interrupt;

    /// Throws DomainError on out-of-range fields.
    void validate() const;
};

struct SearchResult {
    std::string family_digest;
    std::uint64_t x = 0;
    std::uint64_t count = 0;
    /// Increasing t values; only those found in this process (not before a resume).
    std::optional<std::vector<std::uint64_t>> hits;
    std::uint64_t segments_done = 0;
    /// Count per segment, in order, for the segments run in this process.
    std::vector<std::uint64_t> segment_counts;
    /// First t of this process's work (1 unless resumed).
    std::uint64_t resumed_from = 1;
    /// False when stopped early; count then covers [1, next_start).
    bool complete = true;
    std::uint64_t next_start = 0;
    std::chrono::milliseconds wall_time{0};
};

/// One byte per t in [t_lo, t_hi); nonzero marks a candidate.
class CandidateBitmap {
public:
    CandidateBitmap() = default;
    CandidateBitmap(std::uint64_t t_lo, std::uint64_t t_hi) : t_lo_(t_lo), bytes_(t_hi - t_lo, 1) {}

    std::uint64_t t_lo() const { return t_lo_; }
    std::uint64_t t_hi() const { return t_lo_ + bytes_.size(); }
    std::size_t size() const { return bytes_.size(); }
    bool empty() const { return bytes_.empty(); }
    bool test(std::uint64_t t) const { return bytes_[t - t_lo_] != 0; }
    std::span<std::uint8_t> bytes() { return bytes_; }
    std::span<const std::uint8_t> bytes() const { return bytes_; }
    std::size_t count() const;
    std::vector<std::uint64_t> survivors() const;

private:
    std::uint64_t t_lo_ = 0;
    std::vector<std::uint8_t> bytes_;
};

/// Precomputed sieving data for one family and prime bound: roots of every
/// member modulo every sieving prime, a presieve pattern for the primes <= 17,
/// and the small t at which some member equals a sieving prime.
class SearchPlan {
public:
    SearchPlan(const PolyFamily& family, std::uint64_t sieve_prime_bound);

    const PolyFamily& family() const { return family_; }
    std::uint64_t sieve_prime_bound() const { return bound_; }

    /// Clears out[i] for t = t_lo + i when some member has a prime factor
    /// r <= bound with r < f(t). out.size() must fit in 32 bits.
    void sieve(std::uint64_t t_lo, std::span<std::uint8_t> out) const;
    /// Every member prime at t.
    bool all_prime(std::uint64_t t) const;
    /// Throws DomainError if some member is <= 0 somewhere in [t_lo, t_hi).
    void check_positive(std::uint64_t t_lo, std::uint64_t t_hi) const;

private:
    struct Member {
        IntPolynomial poly;
        std::vector<std::int64_t> small; // coefficients when they fit
        bool has_small = false;
    };
    bool survives_exactly(std::uint64_t t) const;

    PolyFamily family_;
    std::uint64_t bound_;
    std::vector<Member> order_; // cheapest first
    std::vector<std::uint64_t> sieving_primes_;
    std::vector<std::uint8_t> pattern_; // doubled presieve period
    std::uint64_t period_ = 1;
    std::vector<std::uint32_t> entry_prime_; // (prime, root) strike entries
    std::vector<std::uint32_t> entry_root_;
    std::vector<std::uint64_t> always_divisible_; // primes dividing a member identically
    std::vector<std::uint64_t> exceptions_;
    std::vector<std::uint64_t> nonpositive_;
};

/// Candidate bitmap over [t_lo, t_hi) using the primes of `primes` as the
/// sieving set. Throws DomainError for t_lo < 1 or a non-positive member.
CandidateBitmap sieve_segment(const PolyFamily& family, std::uint64_t t_lo, std::uint64_t t_hi,
                              const PrimeTable& primes);

/// Q(x): the number of t in [1, x] with every member prime.
SearchResult count_simultaneous_primes(const PolyFamily& family, std::uint64_t x, const SearchConfig& config = {});

/// (e - q) / q as a signed percentage. Throws DomainError for q == 0.
double relative_error(std::uint64_t q, double e);

/// CSV with header t,f1,...,fk and one row per hit.
void write_hits_csv(std::ostream& out, const PolyFamily& family, std::span<const std::uint64_t> hits);

} // namespace bhc
