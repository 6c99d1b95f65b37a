// Acceptance run: one PASS/FAIL line per item. Items listed in kKnownDeviations
// are reported as FAIL when they fail but do not change the exit status.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "bhc/bhc_integral.hpp"
#include "bhc/group_catalog.hpp"
#include "bhc/hl_constant.hpp"
#include "bhc/prime_search.hpp"
#include "oracle.hpp"

using namespace bhc;

namespace {

constexpr std::uint64_t kFullBound = 1'000'000'000;
constexpr double kEstimateRelTol = 1e-6;
constexpr double kRelErrorTolPP = 0.001;
constexpr std::uint64_t kDeskX = 100'000;

// Published constants our truncated product does not reproduce at B = 1e9.
const std::set<std::string> kKnownDeviations{
    "C1 psu3:c", "C1 half-plus:1", "C1 half-plus:2", "C1 half-plus:3", "C1 half-plus:4",
};

int failures = 0, known = 0, passes = 0;

void report(const std::string& id, bool ok, const std::string& detail) {
    const bool expected_fail = kKnownDeviations.count(id) > 0;
    const char* tag = ok ? (expected_fail ? "XPASS" : "PASS") : (expected_fail ? "FAIL (known deviation)" : "FAIL");
    std::printf("[%s] %s: %s\n", tag, id.c_str(), detail.c_str());
    std::fflush(stdout);
    if (ok)
        ++passes;
    else if (expected_fail)
        ++known;
    else
        ++failures;
}

std::string fmt(const char* f, double a, double b = 0, double c = 0) {
    char buf[256];
    std::snprintf(buf, sizeof buf, f, a, b, c);
    return buf;
}

HLOptions opts(unsigned threads, bool waive) {
    HLOptions o;
    o.threads = threads;
    o.waive_irreducibility = waive;
    return o;
}

struct ConstantRow {
    const char* spec;
    const char* printed;
};
const ConstantRow kConstants[] = {
    {"case-a", "5.71649719"},      {"psu3:c", "12.10128533"},    {"projective:3,1", "1.521730"},
    {"half-plus:1", "4.426783"},   {"half-plus:2", "10.433814"}, {"half-plus:3", "7.885346"},
    {"half-plus:4", "14.642571"},
};

struct CountRow {
    const char* spec;
    std::uint64_t q;
};
const CountRow kCounts[] = {{"case-a", 614423}, {"case-b", 615369}, {"case-c", 616509},
                            {"case-d", 616289}, {"m-primes:7", 556373}, {"psu3:c", 30452}};

struct EstimateRow {
    const char* id;
    const char* spec;
    std::uint64_t x;
    double constant; // accepted constant
    double e;
    std::uint64_t q;       // published count
    double rel;            // published relative error, percent
    bool q_recomputed;     // count available from the criterion-2 run
};
const EstimateRow kEstimates[] = {
    {"case-a", "case-a", kFullBound, 5.71649719, 615580.70, 614423, 0.188, true},
    {"case-b", "case-b", kFullBound, 5.71649719, 615580.614, 615369, 0.034, true},
    {"case-c", "case-c", kFullBound, 5.71649719, 616720.62, 616509, 0.034, true},
    {"case-d", "case-d", kFullBound, 5.71649719, 616720.51, 616289, 0.070, true},
    {"m-primes:7", "m-primes:7", kFullBound, 5.71649719, 556520.2, 556373, 0.026, true},
    {"ex6.3", "psu3:c", kFullBound, 12.10128533, 30504.71, 30452, 0.173, true},
    {"table1-k1", "half-plus:1", kFullBound, 4.426783, 5448648.05, 5448994, -0.006, true},
    {"table1-k2", "half-plus:2", kFullBound, 10.433814, 6365668.39, 6373197, -0.118, false},
    {"table1-k3", "half-plus:3", kFullBound, 7.885346, 2395075.38, 2394012, 0.044, false},
    {"table1-k4", "half-plus:4", kFullBound, 14.642571, 2218975.66, 2219445, -0.021, false},
    {"n3e1@1e10", "projective:3,1", 10'000'000'000ULL, 1.521730, 1.579642126e7, 15801827, -0.03420956, false},
    {"n3e1@1e11", "projective:3,1", 100'000'000'000ULL, 1.521730, 1.292974079e8, 129294308, 0.00239757, false},
};

std::uint64_t count(const std::string& spec, std::uint64_t x, unsigned threads) {
    SearchConfig c;
    c.thread_count = threads;
    return count_simultaneous_primes(family_from_spec(spec).family, x, c).count;
}

} // namespace

int main() {
    const auto t0 = std::chrono::steady_clock::now();

    // 1. constants at B = 1e9 (tolerance: one unit in the last printed digit)
    std::map<std::string, HLConstantResult> constants;
    for (const auto& row : kConstants) {
        NamedFamily nf = family_from_spec(row.spec);
        auto c = hl_constant(nf.family, kFullBound, nf.omega_override, opts(1, nf.irreducible_by_construction));
        constants[row.spec] = c;
        const std::string printed = row.printed;
        const int decimals = static_cast<int>(printed.size() - printed.find('.') - 1);
        const double unit = std::pow(10.0, -decimals);
        const double diff = c.value - std::stod(printed);
        char got[64];
        std::snprintf(got, sizeof got, "%.*f", decimals, c.value);
        const bool exact_digits = printed == got;
        std::string detail = fmt("C = %.10f, published ", c.value) + printed +
                             fmt(", diff %.2e (tol %.0e)", diff, unit) +
                             (exact_digits ? "" : std::abs(diff) <= unit ? " [flag: last digit differs]" : "");
        report(std::string("C1 ") + row.spec, std::abs(diff) <= unit * (1 + 1e-9), detail);
    }

    // 2. exact counts at x = 1e9
    std::map<std::string, std::uint64_t> counts;
    for (const auto& row : kCounts) {
        const auto q = count(row.spec, kFullBound, 1);
        counts[row.spec] = q;
        report(std::string("C2 ") + row.spec, q == row.q,
               "Q(1e9) = " + std::to_string(q) + ", published " + std::to_string(row.q));
    }
    // half-plus:1 is cheap enough to count here; k >= 2 are batch jobs.
    counts["half-plus:1"] = count("half-plus:1", kFullBound, 1);
    report("C2 half-plus:1", counts["half-plus:1"] == 5448994,
           "Q(1e9) = " + std::to_string(counts["half-plus:1"]) + ", published 5448994");

    // 3 and 4. estimates with the accepted constant, then relative errors
    for (const auto& row : kEstimates) {
        const auto fam = family_from_spec(row.spec).family;
        const double integral = bhc_integral(fam, static_cast<double>(row.x)).integral;
        const double e = row.constant * integral;
        const double rel_dev = std::abs(e - row.e) / row.e;
        report(std::string("C3 ") + row.id, rel_dev <= kEstimateRelTol,
               fmt("E = %.4f, published %.4f, rel. deviation %.2e", e, row.e, rel_dev));

        if (row.id == std::string("n3e1@1e10") || row.id == std::string("n3e1@1e11")) {
            // published percentages carry eight decimals; recompute from the published Q
            const double rel = relative_error(row.q, e);
            report(std::string("C4 ") + row.id, std::abs(rel - row.rel) <= kRelErrorTolPP,
                   fmt("rel. error %+.5f%% (published Q), published %+.8f%%", rel, row.rel));
            continue;
        }
        const std::uint64_t q = row.q_recomputed ? counts.at(row.spec) : row.q;
        const double rel = relative_error(q, e);
        report(std::string("C4 ") + row.id, std::abs(rel - row.rel) <= kRelErrorTolPP,
               fmt("rel. error %+.4f%%, published %+.3f%%", rel, row.rel) +
                   (row.q_recomputed ? "" : " (published Q; count excluded, see C6)"));
    }

    // 5. desk-scale oracle suite
    {
        bool all = true;
        std::string bad;
        for (const auto& nf : catalog()) {
            const auto want = oracle::hits(nf.family, kDeskX).size();
            const auto got = count_simultaneous_primes(nf.family, kDeskX).count;
            if (got != want) {
                all = false;
                bad += " " + nf.tag;
            }
        }
        report("C5 Q(1e5) engine vs oracle, every catalog family", all,
               all ? std::to_string(catalog().size()) + " families agree" : "mismatch:" + bad);
    }
    {
        bool all = true;
        std::size_t checked = 0;
        for (const auto& nf : catalog()) {
            OmegaEvaluator ev(nf.family, nf.omega_override);
            for (std::uint64_t r = 2; r < 1000; ++r) {
                if (!oracle::trial_prime(r)) continue;
                const auto want = oracle::omega(nf.family, r);
                all = all && ev(r) == want && ev.generic(r) == want;
                ++checked;
            }
        }
        report("C5 omega generic vs brute force, r < 1e3", all, std::to_string(checked) + " (family, r) pairs");
    }
    {
        bool all = true;
        for (std::uint64_t p = 3; p < 1000; p += 2) {
            if (!oracle::trial_prime(p)) continue;
            for (std::uint64_t q = 1; q < p; ++q) {
                const auto e = powmod(q, (p - 1) / 2, p);
                const int euler = e == 1 ? 1 : e == p - 1 ? -1 : 0;
                all = all && jacobi(static_cast<std::int64_t>(q), p) == euler;
            }
        }
        report("C5 jacobi vs Euler criterion, p < 1e3", all, "all odd primes");
    }
    {
        bool all = true;
        std::size_t labelled = 0;
        auto omega_of = [](std::uint64_t n) {
            unsigned k = 0;
            for (std::uint64_t d = 2; d * d <= n; ++d)
                while (n % d == 0) {
                    n /= d;
                    ++k;
                }
            return k + (n > 1);
        };
        for (std::uint64_t p = 17; p <= 1'000'000; p += 2) {
            if (!oracle::trial_prime(p)) continue;
            const unsigned om = omega_of(p - 1) + omega_of(p + 1);
            const auto label = classify_six_primes(p);
            all = all && om >= 6 && (om == 6) == label.has_value();
            labelled += label.has_value();
        }
        report("C5 six-primes classification exhaustive, p <= 1e6", all,
               std::to_string(labelled) + " primes with Omega(p^2-1) = 6");
    }
    {
        const double pi = static_cast<double>(prime_count(1'000'000));
        const double l = li(1e6);
        const double dev = std::abs(l - pi) / pi;
        report("C5 li(1e6) vs pi(1e6)", dev < 0.002, fmt("li = %.4f, pi = %.0f, rel. %.4f%%", l, pi, dev * 100));
    }

    // 6. excluded batch jobs
    std::printf("[SKIP] C6: Q(1e10), Q(1e11) for projective:3,1 and Q(1e9) for half-plus:2..4 run via "
                "`bhc reproduce ... --scale full --batch`\n");

    // 7. determinism across thread counts
    for (const auto& row : kConstants) {
        NamedFamily nf = family_from_spec(row.spec);
        auto c8 = hl_constant(nf.family, kFullBound, nf.omega_override, opts(8, nf.irreducible_by_construction));
        const auto& c1 = constants.at(row.spec);
        report(std::string("C7 C ") + row.spec, c8.log_sum == c1.log_sum && c8.value == c1.value,
               fmt("threads 1 vs 8: %.17g vs %.17g", c1.value, c8.value));
    }
    for (const auto& row : kCounts) {
        const auto q8 = count(row.spec, kFullBound, 8);
        report(std::string("C7 Q ") + row.spec, q8 == counts.at(row.spec),
               "threads 1 vs 8: " + std::to_string(counts.at(row.spec)) + " vs " + std::to_string(q8));
    }

    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::printf("acceptance: %d passed, %d failed, %d known deviations (%.0f s)\n", passes, failures, known, secs);
    return failures == 0 ? 0 : 1;
}
