#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "bhc/poly.hpp"
#include "bhc/primes.hpp"

namespace bhc {

/// Kahan-compensated sum; value() folds the compensation back in.
struct KahanSum {
    double sum = 0.0;
    double comp = 0.0;

    void add(double x) {
        double y = x - comp;
        double t = sum + y;
        comp = (t - sum) - y;
        sum = t;
    }
    void merge(const KahanSum& o) {
        add(o.sum);
        add(-o.comp);
    }
    double value() const { return sum - comp; }
    bool operator==(const KahanSum&) const = default;
};

struct HLConstantResult {
    double value = 1.0;
    std::uint64_t requested_bound = 0;
    /// Largest prime included in the product.
    std::uint64_t prime_bound = 0;
    std::size_t k = 0;
    KahanSum log_sum;
    /// C(B) - C(B/10); a drift diagnostic, not a correction.
    std::optional<double> tail_estimate;
    std::string family_digest;
    std::uint64_t primes_used = 0;
};

struct HLOptions {
    unsigned threads = 1;
    std::optional<std::filesystem::path> checkpoint_path;
    std::uint64_t checkpoint_interval_primes = 100'000'000;
    bool waive_irreducibility = false;
    /// Width of the fixed chunk grid; results depend on it, not on threads.
    std::uint64_t chunk_width = std::uint64_t{1} << 24;
    /// Polled between waves of chunks; returning true saves the checkpoint
    /// (when configured) and throws ResourceError.
    std::function<bool()> interrupt;
};

/// (1 - 1/r)^(-k) (1 - omega/r). Throws InadmissibleFamily when omega == r.
double euler_factor(const PolyFamily& family, std::uint64_t r,
                    const std::optional<OmegaOverride>& override_rule = std::nullopt);
/// log of the factor: log1p(-omega/r) - k log1p(-1/r).
double log_euler_factor(std::size_t k, std::uint64_t omega, std::uint64_t r);

/// Truncated product over the primes <= prime_bound, streamed from a
/// segmented sieve.
HLConstantResult hl_constant(const PolyFamily& family, std::uint64_t prime_bound,
                             const std::optional<OmegaOverride>& override_rule = std::nullopt,
                             const HLOptions& options = {});

/// Same product over a precomputed table (which must cover prime_bound).
HLConstantResult hl_constant(const PolyFamily& family, std::uint64_t prime_bound, const PrimeTable& primes,
                             const std::optional<OmegaOverride>& override_rule = std::nullopt,
                             const HLOptions& options = {});

struct ProfilePoint {
    std::uint64_t bound;
    double value;
};

/// Partial products at each (increasing) bound, in one pass.
std::vector<ProfilePoint> convergence_profile(const PolyFamily& family, const std::vector<std::uint64_t>& bounds,
                                              const std::optional<OmegaOverride>& override_rule = std::nullopt,
                                              const HLOptions& options = {});

} // namespace bhc
