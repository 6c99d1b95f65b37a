#include "bhc/cli.hpp"

#include <gmpxx.h>

#include <atomic>
#include <chrono>
#include <cmath>
#include <csignal>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <thread>

#include <CLI11.hpp>

#include "bhc/bhc_integral.hpp"
#include "bhc/errors.hpp"
#include "bhc/hl_constant.hpp"
#include "bhc/prime_search.hpp"

namespace bhc::cli {

using nlohmann::json;

namespace {

std::atomic<bool> g_stop{false};

extern "C" void on_signal(int) { g_stop.store(true); }

class SignalGuard {
public:
    SignalGuard() {
        g_stop.store(false);
        old_int_ = std::signal(SIGINT, on_signal);
        old_term_ = std::signal(SIGTERM, on_signal);
    }
    ~SignalGuard() {
        std::signal(SIGINT, old_int_);
        std::signal(SIGTERM, old_term_);
    }
    SignalGuard(const SignalGuard&) = delete;
    SignalGuard& operator=(const SignalGuard&) = delete;

private:
    void (*old_int_)(int);
    void (*old_term_)(int);
};

class Interrupted : public ResourceError {
public:
    using ResourceError::ResourceError;
};

const char* const kThin = " ";

std::string format_bound(std::uint64_t v) {
    if (v >= 1000) {
        unsigned e = 0;
        std::uint64_t m = v;
        while (m % 10 == 0) {
            m /= 10;
            ++e;
        }
        if (m < 10 && e >= 3) return std::to_string(m) + "e" + std::to_string(e);
    }
    return group_thin(v);
}

std::string sig10(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%#.10g", v);
    return buf;
}

std::string plain(double v, int decimals) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", decimals, v);
    return buf;
}

std::string signed_percent(double v, int decimals) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%+.*f%%", decimals, v);
    return buf;
}

template <class T>
json opt(const std::optional<T>& v) {
    return v ? json(*v) : json(nullptr);
}

template <class T>
std::optional<T> get_opt(const json& j, const char* key) {
    if (!j.contains(key) || j.at(key).is_null()) return std::nullopt;
    return j.at(key).get<T>();
}

struct ResolvedFamily {
    PolyFamily family;
    std::string description;
    std::optional<OmegaOverride> omega_override;
    bool waive = false;
};

struct FamilyArgs {
    std::string case_label;
    std::string family_spec;
    std::vector<std::string> polys;
    bool waive = false;

    void attach(CLI::App* cmd) {
        auto* c = cmd->add_option("--case", case_label, "six-primes case a|b|c|d");
        auto* f = cmd->add_option("--family", family_spec,
                                  "named family: m-primes:M, psu3:CASE, projective:N,E, unitary:N,E, "
                                  "half-plus:K, symplectic:J,K, sophie-germain, twin");
        auto* p = cmd->add_option("--poly", polys, "member polynomial, e.g. 12t+5 or 5,12 (repeatable)");
        c->excludes(f)->excludes(p);
        f->excludes(p);
        cmd->add_flag("--waive-irreducibility", waive, "skip the irreducibility requirement for --poly families");
    }

    ResolvedFamily resolve() const {
        if (!case_label.empty() || !family_spec.empty()) {
            NamedFamily nf = family_from_spec(case_label.empty() ? family_spec : "case-" + case_label);
            return {nf.family, nf.tag, nf.omega_override, nf.irreducible_by_construction || waive};
        }
        if (polys.empty()) throw CLI::RequiredError("one of --case, --family, --poly");
        std::vector<IntPolynomial> m;
        for (const auto& s : polys) m.push_back(IntPolynomial::parse(s));
        PolyFamily fam(std::move(m));
        return {fam, fam.to_string(), std::nullopt, waive};
    }
};

unsigned default_threads() {
    if (const char* env = std::getenv("BHC_THREADS")) {
        char* end = nullptr;
        unsigned long v = std::strtoul(env, &end, 10);
        if (end != env && *end == '\0' && v >= 1 && v <= 1024) return static_cast<unsigned>(v);
    }
    unsigned hw = std::thread::hardware_concurrency();
    return hw ? hw : 1;
}

CLI::Validator count_validator() {
    return CLI::Validator(
        [](std::string& s) {
            try {
                parse_count(s);
            } catch (const std::exception& e) {
                return std::string(e.what());
            }
            return std::string();
        },
        "COUNT");
}

struct Clock {
    std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
    double ms() const {
        return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    }
};

struct CommonArgs {
    bool json_out = false;
    unsigned threads = default_threads();

    void attach(CLI::App* cmd) {
        cmd->add_flag("--json", json_out, "machine-readable report on stdout");
        cmd->add_option("--threads", threads, "worker threads (default: BHC_THREADS or all cores)")
            ->check(CLI::Range(1u, 1024u));
    }
};

void print_report(std::ostream& out, const ExperimentReport& r, bool as_json) {
    if (as_json) {
        out << r.to_json().dump(2) << '\n';
        return;
    }
    auto row = [&](const std::string& k, const std::string& v) { out << std::left << std::setw(16) << k << v << '\n'; };
    if (!r.experiment_id.empty()) row("experiment", r.experiment_id + (r.scale.empty() ? "" : " (" + r.scale + ")"));
    row("family", r.family);
    if (r.prime_bound) row("prime bound", format_bound(*r.prime_bound));
    if (r.C) row("C(f)", sig10(*r.C));
    if (r.x) row("x", format_bound(*r.x));
    if (r.a) row("lower limit a", std::to_string(*r.a));
    if (r.integral) row("integral", group_thin(*r.integral, 6));
    if (r.E) row("E(x)", group_thin(*r.E, 2));
    if (r.Q) row("Q(x)", group_thin(*r.Q));
    if (r.relative_error_percent) row("rel. error", signed_percent(*r.relative_error_percent, 4));
    for (const auto& c : r.checks) {
        std::string status = !c.pass ? "FAIL" : c.flagged ? "flag" : "ok";
        row("check", status + "  " + c.name + ": expected " + c.expected + ", got " + c.actual +
                         (c.tolerance.empty() ? "" : " (" + c.tolerance + ")"));
    }
    out << std::left << std::setw(16) << "wall time" << plain(r.wall_time_ms / 1000.0, 2) << " s\n";
}

HLOptions hl_options(const ResolvedFamily& f, unsigned threads, const std::string& checkpoint) {
    HLOptions o;
    o.threads = threads;
    o.waive_irreducibility = f.waive;
    o.interrupt = [] { return g_stop.load(); };
    if (!checkpoint.empty()) o.checkpoint_path = checkpoint;
    return o;
}

SearchResult run_count(const PolyFamily& family, std::uint64_t x, unsigned threads, const std::string& checkpoint,
                       bool collect_hits) {
    SearchConfig cfg;
    cfg.thread_count = threads;
    cfg.collect_hits = collect_hits;
    if (collect_hits) cfg.hit_limit = std::uint64_t{1} << 26;
    if (!checkpoint.empty()) cfg.checkpoint_path = checkpoint;
    cfg.stop = &g_stop;
    SearchResult res = count_simultaneous_primes(family, x, cfg);
    if (!res.complete)
        throw Interrupted("interrupted at t = " + std::to_string(res.next_start) +
                          (checkpoint.empty() ? std::string() : "; resume from " + checkpoint));
    return res;
}

// Decimal places of a printed constant.
int printed_decimals(const std::string& s) {
    auto dot = s.find('.');
    return dot == std::string::npos ? 0 : static_cast<int>(s.size() - dot - 1);
}

Check constant_check(double computed, const std::string& printed) {
    const int d = printed_decimals(printed);
    const double expected = std::stod(printed);
    const double unit = std::pow(10.0, -d);
    Check c{"C", printed, plain(computed, d + 2), "+-1 in last digit"};
    c.pass = std::abs(computed - expected) <= unit * (1 + 1e-9);
    c.flagged = c.pass && plain(computed, d) != printed;
    return c;
}

} // namespace

// ---------------------------------------------------------------------------

bool ExperimentReport::passed() const {
    for (const auto& c : checks)
        if (!c.pass) return false;
    return true;
}

void ExperimentReport::derive_relative_error() {
    if (E && Q && *Q > 0)
        relative_error_percent = relative_error(*Q, *E);
    else
        relative_error_percent.reset();
}

json ExperimentReport::to_json() const {
    json checks_j = json::array();
    for (const auto& c : checks)
        checks_j.push_back({{"name", c.name},
                            {"expected", c.expected},
                            {"actual", c.actual},
                            {"tolerance", c.tolerance},
                            {"pass", c.pass},
                            {"flagged", c.flagged}});
    return json{{"experiment_id", experiment_id},
                {"family", family},
                {"family_digest", family_digest},
                {"scale", scale},
                {"x", opt(x)},
                {"prime_bound", opt(prime_bound)},
                {"tol", opt(tol)},
                {"threads", threads},
                {"C", opt(C)},
                {"a", opt(a)},
                {"integral", opt(integral)},
                {"E", opt(E)},
                {"Q", opt(Q)},
                {"relative_error_percent", opt(relative_error_percent)},
                {"checks", checks_j},
                {"passed", passed()},
                {"citations", citations},
                {"wall_time_ms", wall_time_ms},
                {"tool_version", tool_version}};
}

ExperimentReport ExperimentReport::from_json(const json& j) {
    ExperimentReport r;
    r.experiment_id = j.at("experiment_id").get<std::string>();
    r.family = j.at("family").get<std::string>();
    r.family_digest = j.value("family_digest", "");
    r.scale = j.value("scale", "");
    r.x = get_opt<std::uint64_t>(j, "x");
    r.prime_bound = get_opt<std::uint64_t>(j, "prime_bound");
    r.tol = get_opt<double>(j, "tol");
    r.threads = j.value("threads", 1u);
    r.C = get_opt<double>(j, "C");
    r.a = get_opt<std::uint64_t>(j, "a");
    r.integral = get_opt<double>(j, "integral");
    r.E = get_opt<double>(j, "E");
    r.Q = get_opt<std::uint64_t>(j, "Q");
    r.relative_error_percent = get_opt<double>(j, "relative_error_percent");
    for (const auto& c : j.value("checks", json::array()))
        r.checks.push_back({c.at("name"), c.at("expected"), c.at("actual"), c.value("tolerance", ""),
                            c.at("pass").get<bool>(), c.value("flagged", false)});
    r.citations = j.value("citations", std::vector<std::string>{});
    r.wall_time_ms = j.at("wall_time_ms").get<double>();
    r.tool_version = j.at("tool_version").get<std::string>();
    return r;
}

const std::vector<Experiment>& experiments() {
    static const std::vector<Experiment> table = [] {
        constexpr std::uint64_t G = 1'000'000'000;
        std::vector<Experiment> v;
        auto six = [&](const char* id, const char* fam, double e, std::uint64_t q, double rel, const char* cite) {
            v.push_back({id, fam, G, "5.71649719", {{G, e, q, rel, false}}, cite});
        };
        six("sec5-case-a", "case-a", 615580.70, 614423, 0.188, "six-primes case (a): C, E(10^9), Q(10^9)");
        six("sec5-case-b", "case-b", 615580.614, 615369, 0.034, "six-primes case (b): C, E(10^9), Q(10^9)");
        six("sec5-case-c", "case-c", 616720.62, 616509, 0.034, "six-primes case (c): C, E(10^9), Q(10^9)");
        six("sec5-case-d", "case-d", 616720.51, 616289, 0.070, "six-primes case (d): C, E(10^9), Q(10^9)");
        v.push_back({"sec6-m7", "m-primes:7", G, "", {{G, 556520.2, 556373, 0.026, false}},
                     "m-primes family, m = 7: E(10^9), Q(10^9)"});
        v.push_back({"ex6.3", "psu3:c", G, "12.10128533", {{G, 30504.71, 30452, 0.173, false}},
                     "PSU3 four-member family over case (c): C, E(10^9), Q(10^9)"});
        v.push_back({"sec7-n3e1",
                     "projective:3,1",
                     G,
                     "1.521730",
                     {{10 * G, 1.579642126e7, 15801827, -0.03420956, true},
                      {100 * G, 1.292974079e8, 129294308, 0.00239757, true}},
                     "projective primes (q^2+q+1), n = 3, e = 1: E and Q at 10^10 and 10^11"});
        struct Row {
            const char* c;
            double e;
            std::uint64_t q;
            double rel;
        };
        const Row rows[] = {{"4.426783", 5448648.05, 5448994, -0.006},
                            {"10.433814", 6365668.39, 6373197, -0.118},
                            {"7.885346", 2395075.38, 2394012, 0.044},
                            {"14.642571", 2218975.66, 2219445, -0.021}};
        for (unsigned k = 1; k <= 4; ++k) {
            const Row& r = rows[k - 1];
            v.push_back({"table1-k" + std::to_string(k), "half-plus:" + std::to_string(k), G, r.c,
                         {{G, r.e, r.q, r.rel, k >= 2}},
                         "half-plus family k = " + std::to_string(k) + ": C, Q(10^9), E(10^9)"});
        }
        return v;
    }();
    return table;
}

const Experiment* find_experiment(const std::string& id) {
    for (const auto& e : experiments())
        if (e.id == id) return &e;
    return nullptr;
}

std::string group_thin(std::uint64_t v) {
    std::string digits = std::to_string(v), out;
    for (std::size_t i = 0; i < digits.size(); ++i) {
        if (i && (digits.size() - i) % 3 == 0) out += kThin;
        out += digits[i];
    }
    return out;
}

std::string group_thin(double v, int decimals) {
    std::string s = plain(std::abs(v), decimals);
    auto dot = s.find('.');
    std::string ip = s.substr(0, dot), frac = dot == std::string::npos ? "" : s.substr(dot);
    std::string out = v < 0 ? "-" : "";
    for (std::size_t i = 0; i < ip.size(); ++i) {
        if (i && (ip.size() - i) % 3 == 0) out += kThin;
        out += ip[i];
    }
    return out + frac;
}

std::uint64_t parse_count(const std::string& s) {
    auto fail = [&]() -> std::uint64_t { throw DomainError("not a non-negative integer: '" + s + "'"); };
    if (s.empty()) return fail();
    std::string mant = s;
    unsigned exp = 0;
    auto caret = s.find("^");
    auto e = s.find_first_of("eE");
    if (caret != std::string::npos) {
        if (s.substr(0, caret) != "10") return fail();
        mant = "1";
        const std::string es = s.substr(caret + 1);
        if (es.empty() || es.find_first_not_of("0123456789") != std::string::npos || es.size() > 2) return fail();
        exp = static_cast<unsigned>(std::stoul(es));
    } else if (e != std::string::npos) {
        mant = s.substr(0, e);
        const std::string es = s.substr(e + 1);
        if (es.empty() || es.find_first_not_of("0123456789") != std::string::npos || es.size() > 2) return fail();
        exp = static_cast<unsigned>(std::stoul(es));
    }
    // mantissa may carry a decimal point ("2.5e6")
    auto dot = mant.find('.');
    std::string digits = mant;
    if (dot != std::string::npos) {
        std::string frac = mant.substr(dot + 1);
        while (!frac.empty() && frac.back() == '0') frac.pop_back();
        if (frac.size() > exp) return fail();
        digits = mant.substr(0, dot) + frac;
        exp -= static_cast<unsigned>(frac.size());
    }
    if (digits.empty() || digits.find_first_not_of("0123456789") != std::string::npos) return fail();
    mpz_class v(digits);
    mpz_class p;
    mpz_ui_pow_ui(p.get_mpz_t(), 10, exp);
    v *= p;
    if (!mpz_fits_ulong_p(v.get_mpz_t()) || sizeof(unsigned long) < 8) return fail();
    return v.get_ui();
}

std::uint64_t oracle_count(const PolyFamily& family, std::uint64_t x) {
    std::vector<std::vector<mpz_class>> coeffs;
    for (const auto& m : family.members()) {
        std::vector<mpz_class> c;
        for (const auto& a : m.coefficients()) c.push_back(a);
        coeffs.push_back(std::move(c));
    }
    std::uint64_t count = 0;
    mpz_class t, v;
    for (std::uint64_t i = 1; i <= x; ++i) {
        mpz_set_ui(t.get_mpz_t(), i);
        bool all = true;
        for (const auto& c : coeffs) {
            v = c.back();
            for (std::size_t d = c.size() - 1; d-- > 0;) v = v * t + c[d];
            if (v < 2 || mpz_probab_prime_p(v.get_mpz_t(), 30) == 0) {
                all = false;
                break;
            }
        }
        count += all;
    }
    return count;
}

// ---------------------------------------------------------------------------

namespace {

ExperimentReport cmd_constant(const ResolvedFamily& f, std::uint64_t bound, unsigned threads,
                              const std::string& checkpoint) {
    Clock clock;
    ExperimentReport r;
    r.experiment_id = "constant";
    r.family = f.description;
    r.family_digest = f.family.digest();
    r.threads = threads;
    HLConstantResult c = hl_constant(f.family, bound, f.omega_override, hl_options(f, threads, checkpoint));
    r.prime_bound = bound;
    r.C = c.value;
    r.wall_time_ms = clock.ms();
    return r;
}

ExperimentReport cmd_estimate(const ResolvedFamily& f, std::uint64_t x, std::uint64_t bound,
                              std::optional<double> constant, double tol, unsigned threads,
                              const std::string& checkpoint) {
    Clock clock;
    ExperimentReport r;
    r.experiment_id = "estimate";
    r.family = f.description;
    r.family_digest = f.family.digest();
    r.threads = threads;
    r.x = x;
    r.tol = tol;
    // integral first: domain errors on x surface before the long product
    if (!f.waive) require_admissible(f.family, false);
    IntegralResult in = bhc_integral(f.family, static_cast<double>(x), tol);
    r.a = in.a;
    r.integral = in.integral;
    if (constant) {
        r.C = *constant;
    } else {
        r.prime_bound = bound;
        r.C = hl_constant(f.family, bound, f.omega_override, hl_options(f, threads, checkpoint)).value;
    }
    r.E = *r.C * in.integral;
    r.wall_time_ms = clock.ms();
    return r;
}

std::string checkpoint_in(const std::string& dir, const std::string& name) {
    if (dir.empty()) return {};
    std::filesystem::create_directories(dir);
    return (std::filesystem::path(dir) / name).string();
}

ExperimentReport cmd_reproduce(const Experiment& ex, bool full, bool batch, unsigned threads,
                               const std::string& checkpoint_dir, std::ostream& log) {
    Clock clock;
    NamedFamily nf = family_from_spec(ex.family_spec);
    ResolvedFamily f{nf.family, nf.tag, nf.omega_override, nf.irreducible_by_construction};
    ExperimentReport r;
    r.experiment_id = ex.id;
    r.family = f.family.to_string();
    r.family_digest = f.family.digest();
    r.scale = full ? "full" : "desk";
    r.threads = threads;
    r.tol = kDefaultIntegralTol;
    r.citations.push_back(ex.citation);

    const std::uint64_t bound = full ? ex.prime_bound : 10'000'000;
    log << "[" << ex.id << "] C(f) to " << format_bound(bound) << "\n";
    HLConstantResult c =
        hl_constant(f.family, bound, f.omega_override, hl_options(f, threads, checkpoint_in(checkpoint_dir, ex.id + ".C.json")));
    r.prime_bound = bound;
    r.C = c.value;
    if (full && !ex.constant.empty()) r.checks.push_back(constant_check(c.value, ex.constant));

    if (!full) {
        const std::uint64_t x = 10'000'000;
        IntegralResult in = bhc_integral(f.family, static_cast<double>(x));
        r.x = x;
        r.a = in.a;
        r.integral = in.integral;
        r.E = c.value * in.integral;
        log << "[" << ex.id << "] Q(" << format_bound(x) << ") by sieve\n";
        r.Q = run_count(f.family, x, threads, checkpoint_in(checkpoint_dir, ex.id + ".Q.json"), false).count;
        log << "[" << ex.id << "] Q(" << format_bound(x) << ") by direct evaluation\n";
        const std::uint64_t q_oracle = oracle_count(f.family, x);
        r.checks.push_back({"Q(1e7) vs oracle", std::to_string(q_oracle), std::to_string(*r.Q), "exact",
                            *r.Q == q_oracle, false});
        r.derive_relative_error();
        r.wall_time_ms = clock.ms();
        return r;
    }

    const double accepted_c = ex.constant.empty() ? c.value : std::stod(ex.constant);
    for (std::size_t i = 0; i < ex.points.size(); ++i) {
        const ExperimentPoint& p = ex.points[i];
        const std::string xs = format_bound(p.x);
        IntegralResult in = bhc_integral(f.family, static_cast<double>(p.x));
        const double e = c.value * in.integral;
        // published E is checked against the integral times the published constant
        const double e_accepted = accepted_c * in.integral;
        const double rel = std::abs(e_accepted - p.estimate) / p.estimate;
        r.checks.push_back({"E(" + xs + ")", plain(p.estimate, 3), plain(e_accepted, 3), "1e-6 relative",
                            rel <= 1e-6, false});
        std::optional<std::uint64_t> q;
        if (p.count && (!p.batch || batch)) {
            log << "[" << ex.id << "] Q(" << xs << ")\n";
            q = run_count(f.family, p.x, threads, checkpoint_in(checkpoint_dir, ex.id + ".Q" + xs + ".json"), false)
                    .count;
            r.checks.push_back({"Q(" + xs + ")", std::to_string(*p.count), std::to_string(*q), "exact", *q == *p.count,
                                false});
            if (p.relative_error_percent) {
                const double got = relative_error(*q, e_accepted);
                r.checks.push_back({"rel. error at " + xs, signed_percent(*p.relative_error_percent, 3),
                                    signed_percent(got, 4), "+-0.001 pp",
                                    std::abs(got - *p.relative_error_percent) <= 0.001 + 1e-12, false});
            }
        } else if (p.count) {
            r.checks.push_back({"Q(" + xs + ")", std::to_string(*p.count), "skipped (needs --batch)", "exact", true,
                                true});
        }
        if (i == 0) {
            r.x = p.x;
            r.a = in.a;
            r.integral = in.integral;
            r.E = e;
            r.Q = q;
        }
    }
    r.derive_relative_error();
    r.wall_time_ms = clock.ms();
    return r;
}

int exit_for(const ExperimentReport& r) { return r.passed() ? ok : mismatch; }

} // namespace

int run(int argc, char** argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Bateman-Horn estimates, Hardy-Littlewood constants and simultaneous-prime counts", "bhc"};
    app.set_version_flag("--version", std::string(kToolVersion));
    app.require_subcommand(1);

    // constant
    FamilyArgs c_fam;
    CommonArgs c_common;
    std::string c_bound = "1e9", c_ckpt;
    auto* c_cmd = app.add_subcommand("constant", "truncated Hardy-Littlewood product C(f; B)");
    c_fam.attach(c_cmd);
    c_common.attach(c_cmd);
    c_cmd->add_option("--prime-bound,-B", c_bound, "largest prime in the product")->check(count_validator())
        ->capture_default_str();
    c_cmd->add_option("--checkpoint", c_ckpt, "checkpoint file (resumed when present)");

    // estimate
    FamilyArgs e_fam;
    CommonArgs e_common;
    std::string e_x, e_bound = "1e9", e_ckpt;
    double e_tol = kDefaultIntegralTol;
    std::optional<double> e_constant;
    auto* e_cmd = app.add_subcommand("estimate", "Bateman-Horn estimate E(x) = C * integral");
    e_fam.attach(e_cmd);
    e_common.attach(e_cmd);
    e_cmd->add_option("--x", e_x, "upper limit")->required()->check(count_validator());
    e_cmd->add_option("--prime-bound,-B", e_bound, "bound for C(f)")->check(count_validator())->capture_default_str();
    e_cmd->add_option("--tol", e_tol, "relative quadrature tolerance")->check(CLI::Range(1e-15, 1e-3))
        ->capture_default_str();
    e_cmd->add_option("--constant", e_constant, "use this C instead of computing the product");
    e_cmd->add_option("--checkpoint", e_ckpt, "checkpoint file for the product");

    // count
    FamilyArgs q_fam;
    CommonArgs q_common;
    std::string q_x, q_bound, q_ckpt, q_hits;
    bool q_no_estimate = false;
    auto* q_cmd = app.add_subcommand("count", "exact simultaneous-prime count Q(x)");
    q_fam.attach(q_cmd);
    q_common.attach(q_cmd);
    q_cmd->add_option("--x", q_x, "count t in [1, x]")->required()->check(count_validator());
    q_cmd->add_option("--checkpoint", q_ckpt, "checkpoint file (resumed when present)");
    q_cmd->add_option("--hits", q_hits, "write hits as CSV to this file");
    q_cmd->add_option("--prime-bound,-B", q_bound, "bound for the comparison estimate (default min(1e9, max(x, 1e6)))")
        ->check(count_validator());
    q_cmd->add_flag("--no-estimate", q_no_estimate, "skip the comparison estimate");

    // classify
    CommonArgs k_common;
    std::optional<std::uint64_t> k_p;
    std::vector<std::uint64_t> k_range;
    auto* k_cmd = app.add_subcommand("classify", "six-primes case of a prime p > 13");
    k_common.attach(k_cmd);
    auto* k_p_opt = k_cmd->add_option("--p", k_p, "a prime > 13");
    auto* k_r_opt = k_cmd->add_option("--range", k_range, "LO HI")->expected(2);
    k_p_opt->excludes(k_r_opt);

    // reproduce
    CommonArgs r_common;
    std::string r_id, r_scale = "desk", r_ckpt_dir;
    bool r_batch = false;
    auto* r_cmd = app.add_subcommand("reproduce", "rerun a published result row");
    r_common.attach(r_cmd);
    std::vector<std::string> ids;
    for (const auto& e : experiments()) ids.push_back(e.id);
    r_cmd->add_option("id", r_id, "experiment id")->required()->check(CLI::IsMember(ids));
    r_cmd->add_option("--scale", r_scale, "full or desk (x = B = 1e7 against a direct-evaluation count)")
        ->check(CLI::IsMember({"full", "desk"}))
        ->capture_default_str();
    r_cmd->add_flag("--batch", r_batch, "also run counts marked as batch jobs (hours)");
    r_cmd->add_option("--checkpoint", r_ckpt_dir, "checkpoint directory");

    // catalog
    bool cat_json = false;
    auto* cat_cmd = app.add_subcommand("catalog", "list the named families");
    cat_cmd->add_flag("--json", cat_json, "machine-readable listing");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        return usage;
    }

    SignalGuard guard;
    try {
        if (*c_cmd) {
            ResolvedFamily f = c_fam.resolve();
            ExperimentReport r = cmd_constant(f, parse_count(c_bound), c_common.threads, c_ckpt);
            if (c_common.json_out)
                print_report(out, r, true);
            else
                out << sig10(*r.C) << '\n';
            return ok;
        }
        if (*e_cmd) {
            ResolvedFamily f = e_fam.resolve();
            ExperimentReport r = cmd_estimate(f, parse_count(e_x), parse_count(e_bound), e_constant, e_tol,
                                              e_common.threads, e_ckpt);
            print_report(out, r, e_common.json_out);
            return ok;
        }
        if (*q_cmd) {
            Clock clock;
            ResolvedFamily f = q_fam.resolve();
            const std::uint64_t x = parse_count(q_x);
            if (x < 1) throw DomainError("x must be at least 1");
            ExperimentReport r;
            r.experiment_id = "count";
            r.family = f.description;
            r.family_digest = f.family.digest();
            r.threads = q_common.threads;
            r.x = x;
            SearchResult s = run_count(f.family, x, q_common.threads, q_ckpt, !q_hits.empty());
            r.Q = s.count;
            if (!q_hits.empty()) {
                if (s.resumed_from > 1)
                    err << "note: resumed run; hits file covers t >= " << s.resumed_from << '\n';
                if (s.resumed_from == 1 && s.hits->size() < s.count)
                    err << "note: hit list truncated at " << s.hits->size() << " entries\n";
                std::ofstream hf(q_hits);
                if (!hf) throw ResourceError("cannot write " + q_hits);
                write_hits_csv(hf, f.family, *s.hits);
            }
            if (!q_no_estimate && s.count > 0) {
                const std::uint64_t bound =
                    q_bound.empty() ? std::min<std::uint64_t>(1'000'000'000, std::max<std::uint64_t>(x, 1'000'000))
                                    : parse_count(q_bound);
                try {
                    ExperimentReport e = cmd_estimate(f, x, bound, std::nullopt, kDefaultIntegralTol,
                                                      q_common.threads, "");
                    r.prime_bound = e.prime_bound;
                    r.C = e.C;
                    r.a = e.a;
                    r.integral = e.integral;
                    r.E = e.E;
                    r.tol = e.tol;
                } catch (const DomainError& ex) {
                    err << "note: no estimate (" << ex.what() << ")\n";
                }
            }
            r.derive_relative_error();
            r.wall_time_ms = clock.ms();
            print_report(out, r, q_common.json_out);
            return ok;
        }
        if (*k_cmd) {
            if (k_p) {
                auto label = classify_six_primes(*k_p);
                if (k_common.json_out)
                    out << json{{"p", *k_p}, {"case", label ? json(std::string(1, case_letter(*label))) : json(nullptr)}}
                               .dump(2)
                        << '\n';
                else
                    out << *k_p << ": " << (label ? "case (" + std::string(1, case_letter(*label)) + ")" : "none")
                        << '\n';
                return ok;
            }
            if (k_range.size() != 2) throw DomainError("classify needs --p or --range");
            const std::uint64_t lo = k_range[0], hi = k_range[1];
            if (lo <= 13) throw DomainError("classification needs p > 13");
            if (hi < lo) throw DomainError("empty range");
            if (hi - lo > 100'000'000) throw ResourceError("range too wide");
            json rows = json::array();
            for (std::uint64_t p = lo; p <= hi; ++p) {
                if (!is_prime_u64(p)) continue;
                auto label = classify_six_primes(p);
                std::string l = label ? std::string(1, case_letter(*label)) : "";
                if (k_common.json_out)
                    rows.push_back({{"p", p}, {"case", label ? json(l) : json(nullptr)}});
                else
                    out << std::right << std::setw(12) << p << "  " << l << '\n';
            }
            if (k_common.json_out) out << json{{"lo", lo}, {"hi", hi}, {"rows", rows}}.dump(2) << '\n';
            return ok;
        }
        if (*r_cmd) {
            const Experiment* ex = find_experiment(r_id);
            ExperimentReport r =
                cmd_reproduce(*ex, r_scale == "full", r_batch, r_common.threads, r_ckpt_dir, err);
            print_report(out, r, r_common.json_out);
            return exit_for(r);
        }
        if (*cat_cmd) {
            json list = json::array();
            for (const auto& nf : catalog()) {
                std::vector<std::string> members;
                for (const auto& m : nf.family.members()) members.push_back(m.to_string());
                if (cat_json) {
                    list.push_back({{"tag", nf.tag},
                                    {"provenance", provenance_name(nf.provenance)},
                                    {"members", members},
                                    {"source", nf.source},
                                    {"omega_override", nf.omega_override ? json(nf.omega_override->describe())
                                                                         : json(nullptr)},
                                    {"digest", nf.family.digest()}});
                } else {
                    out << std::left << std::setw(18) << nf.tag << std::setw(16) << provenance_name(nf.provenance)
                        << nf.family.to_string() << "\n" << std::string(34, ' ') << nf.source << '\n';
                }
            }
            if (cat_json) out << list.dump(2) << '\n';
            return ok;
        }
    } catch (const Interrupted& e) {
        err << "bhc: " << e.what() << '\n';
        return resource;
    } catch (const CLI::ParseError& e) {
        err << "bhc: " << e.what() << '\n';
        return usage;
    } catch (const DomainError& e) {
        err << "bhc: " << e.what() << '\n';
        return usage;
    } catch (const ResourceError& e) {
        err << "bhc: " << e.what() << '\n';
        return resource;
    } catch (const std::bad_alloc&) {
        err << "bhc: out of memory\n";
        return resource;
    } catch (const std::exception& e) {
        err << "bhc: " << e.what() << '\n';
        return resource;
    }
    return usage;
}

} // namespace bhc::cli
