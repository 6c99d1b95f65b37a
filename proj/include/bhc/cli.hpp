#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "bhc/group_catalog.hpp"

namespace bhc::cli {

inline constexpr const char* kToolVersion = "1.0.0";

enum ExitCode : int { ok = 0, mismatch = 1, usage = 2, resource = 3 };

struct Check {
    std::string name;
    std::string expected;
    std::string actual;
    std::string tolerance;
    bool pass = true;
    /// Within tolerance but not digit-for-digit equal.
    bool flagged = false;

    bool operator==(const Check&) const = default;
};

struct ExperimentReport {
    std::string experiment_id;
    std::string family;
    std::string family_digest;
    std::string scale; // "full", "desk" or empty for ad-hoc commands
    std::optional<std::uint64_t> x;
    std::optional<std::uint64_t> prime_bound;
    std::optional<double> tol;
    unsigned threads = 1;
    std::optional<double> C;
    std::optional<std::uint64_t> a;
    std::optional<double> integral;
    std::optional<double> E;
    std::optional<std::uint64_t> Q;
    std::optional<double> relative_error_percent;
    std::vector<Check> checks;
    std::vector<std::string> citations;
    double wall_time_ms = 0;
    std::string tool_version = kToolVersion;

    bool passed() const;
    /// Fills relative_error_percent from E and Q when both are present.
    void derive_relative_error();

    nlohmann::json to_json() const;
    static ExperimentReport from_json(const nlohmann::json& j);
    bool operator==(const ExperimentReport&) const = default;
};

/// One published (x, E, Q) triple.
struct ExperimentPoint {
    std::uint64_t x;
    double estimate;
    std::optional<std::uint64_t> count;
    std::optional<double> relative_error_percent;
    /// Count too slow for the default full run; needs --batch.
    bool batch = false;
};

/// A reproducible row: a family, its parameters and the published values.
struct Experiment {
    std::string id;
    std::string family_spec;
    std::uint64_t prime_bound;
    std::string constant; // as printed, so the tolerance follows the digits
    /// The first point fills the report's x/E/Q fields.
    std::vector<ExperimentPoint> points;
    std::string citation;
};

const std::vector<Experiment>& experiments();
const Experiment* find_experiment(const std::string& id);

/// 614423 -> "614 423" with U+2009 separators.
std::string group_thin(std::uint64_t v);
/// Groups the integer part; `decimals` digits after the point.
std::string group_thin(double v, int decimals);

/// Parses "1e9", "10^9", "1000000000" exactly.
std::uint64_t parse_count(const std::string& s);

/// Simultaneous-prime count by direct evaluation and GMP probable-prime
/// tests; independent of the sieve engine.
std::uint64_t oracle_count(const PolyFamily& family, std::uint64_t x);

/// Runs the command line; returns the process exit code.
int run(int argc, char** argv, std::ostream& out, std::ostream& err);

} // namespace bhc::cli
