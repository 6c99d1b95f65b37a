#include "bhc/hl_constant.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <set>

#include <json.hpp>

#include "atomic_file.hpp"
#include "bhc/errors.hpp"
#include "bhc/parallel.hpp"

namespace bhc {

using json = nlohmann::json;

double log_euler_factor(std::size_t k, std::uint64_t omega, std::uint64_t r) {
    if (omega >= r)
        throw InadmissibleFamily("omega_f(" + std::to_string(r) + ") = " + std::to_string(omega) +
                                 ": product vanishes identically mod " + std::to_string(r));
    const double rr = static_cast<double>(r);
    return std::log1p(-static_cast<double>(omega) / rr) - static_cast<double>(k) * std::log1p(-1.0 / rr);
}

double euler_factor(const PolyFamily& family, std::uint64_t r, const std::optional<OmegaOverride>& override_rule) {
    std::uint64_t omega = override_rule ? (*override_rule)(r) : omega_f(family, r);
    if (omega >= r) log_euler_factor(family.k(), omega, r); // throws
    const double rr = static_cast<double>(r);
    return std::pow(1.0 - 1.0 / rr, -static_cast<double>(family.k())) * (1.0 - static_cast<double>(omega) / rr);
}

namespace {

using PrimeSource = std::function<void(std::uint64_t, std::uint64_t, const std::function<void(std::span<const std::uint64_t>)>&)>;

struct ChunkOut {
    KahanSum sum;
    std::uint64_t count = 0;
    std::uint64_t last_prime = 0;
};

struct EngineOut {
    KahanSum total;
    std::vector<KahanSum> at_cut; // parallel to cuts
    std::uint64_t last_prime = 0;
    std::uint64_t primes_used = 0;
};

struct Checkpoint {
    std::uint64_t next_start = 2;
    std::uint64_t last_prime = 0;
    std::uint64_t primes_used = 0;
    KahanSum total;
    std::vector<std::pair<std::uint64_t, KahanSum>> cut_states;
};

json encode(const KahanSum& s) { return {{"log_sum", detail::hex_double(s.sum)}, {"compensation", detail::hex_double(s.comp)}}; }

KahanSum decode(const json& j) {
    return {detail::parse_hex_double(j.at("log_sum").get<std::string>()),
            detail::parse_hex_double(j.at("compensation").get<std::string>())};
}

void save_checkpoint(const std::filesystem::path& path, const std::string& digest, std::uint64_t bound,
                     std::uint64_t chunk_width, const Checkpoint& cp) {
    json j = encode(cp.total);
    j["family_digest"] = digest;
    j["prime_bound"] = bound;
    j["chunk_width"] = chunk_width;
    j["next_start"] = cp.next_start;
    j["last_prime"] = cp.last_prime;
    j["primes_used"] = cp.primes_used;
    j["cuts"] = json::array();
    for (const auto& [c, s] : cp.cut_states) {
        json e = encode(s);
        e["bound"] = c;
        j["cuts"].push_back(e);
    }
    detail::write_file_atomic(path, j.dump(2) + "\n");
}

std::optional<Checkpoint> load_checkpoint(const std::filesystem::path& path, const std::string& digest,
                                          std::uint64_t bound, std::uint64_t chunk_width) {
    auto text = detail::read_file(path);
    if (!text) return std::nullopt;
    json j;
    try {
        j = json::parse(*text);
    } catch (const json::exception& e) {
        throw DomainError("unreadable checkpoint " + path.string() + ": " + e.what());
    }
    if (j.value("family_digest", "") != digest || j.value("prime_bound", std::uint64_t{0}) != bound ||
        j.value("chunk_width", std::uint64_t{0}) != chunk_width)
        return std::nullopt;
    Checkpoint cp;
    cp.next_start = j.at("next_start").get<std::uint64_t>();
    cp.last_prime = j.at("last_prime").get<std::uint64_t>();
    cp.primes_used = j.at("primes_used").get<std::uint64_t>();
    cp.total = decode(j);
    for (const auto& e : j.at("cuts")) cp.cut_states.emplace_back(e.at("bound").get<std::uint64_t>(), decode(e));
    return cp;
}

// Sums log Euler factors for the primes in [2, bound]. The chunk grid is a
// function of (bound, cuts, chunk_width) only.
EngineOut run_engine(const PolyFamily& family, std::uint64_t bound, std::vector<std::uint64_t> cuts,
                     const std::optional<OmegaOverride>& override_rule, const HLOptions& opt,
                     const PrimeSource& source) {
    if (opt.chunk_width < 2) throw DomainError("chunk width must be at least 2");
    std::set<std::uint64_t> edges{2, bound + 1};
    for (std::uint64_t c = opt.chunk_width; c <= bound; c += opt.chunk_width) edges.insert(c);
    for (std::uint64_t c : cuts)
        if (c >= 2 && c <= bound) edges.insert(c + 1);
    std::vector<std::uint64_t> grid(edges.begin(), edges.end());
    const std::size_t chunks = grid.size() - 1;

    const OmegaEvaluator omega(family, override_rule);
    const std::size_t k = family.k();
    const std::string digest = family.digest();

    Checkpoint state;
    if (opt.checkpoint_path)
        if (auto cp = load_checkpoint(*opt.checkpoint_path, digest, bound, opt.chunk_width)) state = *cp;

    std::size_t first = 0;
    while (first < chunks && grid[first + 1] <= state.next_start) ++first;
    if (first < chunks && grid[first] != state.next_start && state.next_start != 2)
        throw DomainError("checkpoint does not align with the chunk grid");

    auto record_cuts = [&](std::uint64_t hi) {
        for (std::uint64_t c : cuts)
            if (c + 1 == hi) state.cut_states.emplace_back(c, state.total);
    };

    const std::size_t wave = std::max<std::size_t>(1, opt.threads) * 2;
    std::uint64_t since_checkpoint = 0;
    std::vector<ChunkOut> outs;
    for (std::size_t w0 = first; w0 < chunks; w0 += wave) {
        if (opt.interrupt && opt.interrupt()) {
            if (opt.checkpoint_path) save_checkpoint(*opt.checkpoint_path, digest, bound, opt.chunk_width, state);
            throw ResourceError("interrupted below " + std::to_string(state.next_start));
        }
        const std::size_t w1 = std::min(chunks, w0 + wave);
        outs.assign(w1 - w0, ChunkOut{});
        parallel_for(w1 - w0, opt.threads, [&](std::size_t i) {
            ChunkOut& out = outs[i];
            source(grid[w0 + i], grid[w0 + i + 1], [&](std::span<const std::uint64_t> ps) {
                for (std::uint64_t r : ps) out.sum.add(log_euler_factor(k, omega(r), r));
                out.count += ps.size();
                out.last_prime = ps.back();
            });
        });
        for (std::size_t i = 0; i < outs.size(); ++i) {
            state.total.merge(outs[i].sum);
            state.primes_used += outs[i].count;
            since_checkpoint += outs[i].count;
            if (outs[i].count) state.last_prime = outs[i].last_prime;
            state.next_start = grid[w0 + i + 1];
            record_cuts(state.next_start);
        }
        if (opt.checkpoint_path && (since_checkpoint >= opt.checkpoint_interval_primes || w1 == chunks)) {
            save_checkpoint(*opt.checkpoint_path, digest, bound, opt.chunk_width, state);
            since_checkpoint = 0;
        }
    }

    EngineOut out;
    out.total = state.total;
    out.last_prime = state.last_prime;
    out.primes_used = state.primes_used;
    for (std::uint64_t c : cuts) {
        auto it = std::find_if(state.cut_states.begin(), state.cut_states.end(),
                               [c](const auto& e) { return e.first == c; });
        out.at_cut.push_back(it == state.cut_states.end() ? KahanSum{} : it->second);
    }
    return out;
}

PrimeSource sieve_source() {
    return [](std::uint64_t lo, std::uint64_t hi, const std::function<void(std::span<const std::uint64_t>)>& sink) {
        for_each_prime_block(lo, hi, sink);
    };
}

PrimeSource table_source(const PrimeTable& table) {
    return [&table](std::uint64_t lo, std::uint64_t hi,
                    const std::function<void(std::span<const std::uint64_t>)>& sink) {
        auto ps = table.primes();
        auto a = std::lower_bound(ps.begin(), ps.end(), lo);
        auto b = std::lower_bound(a, ps.end(), hi);
        if (a != b) sink(ps.subspan(static_cast<std::size_t>(a - ps.begin()), static_cast<std::size_t>(b - a)));
    };
}

HLConstantResult finish(const PolyFamily& family, std::uint64_t bound, const EngineOut& e, bool has_tail) {
    HLConstantResult res;
    res.requested_bound = bound;
    res.prime_bound = e.last_prime;
    res.k = family.k();
    res.log_sum = e.total;
    res.value = std::exp(e.total.value());
    res.family_digest = family.digest();
    res.primes_used = e.primes_used;
    if (has_tail) res.tail_estimate = res.value - std::exp(e.at_cut.front().value());
    return res;
}

HLConstantResult hl_impl(const PolyFamily& family, std::uint64_t bound, const std::optional<OmegaOverride>& override_rule,
                         const HLOptions& opt, const PrimeSource& source) {
    if (bound < 2) throw DomainError("prime bound must be at least 2");
    require_admissible(family, opt.waive_irreducibility);
    std::vector<std::uint64_t> cuts;
    const bool has_tail = bound / 10 >= 2;
    if (has_tail) cuts.push_back(bound / 10);
    EngineOut e = run_engine(family, bound, cuts, override_rule, opt, source);
    return finish(family, bound, e, has_tail);
}

} // namespace

HLConstantResult hl_constant(const PolyFamily& family, std::uint64_t prime_bound,
                             const std::optional<OmegaOverride>& override_rule, const HLOptions& options) {
    return hl_impl(family, prime_bound, override_rule, options, sieve_source());
}

HLConstantResult hl_constant(const PolyFamily& family, std::uint64_t prime_bound, const PrimeTable& primes,
                             const std::optional<OmegaOverride>& override_rule, const HLOptions& options) {
    if (primes.limit() < prime_bound) throw DomainError("prime table does not reach the requested bound");
    return hl_impl(family, prime_bound, override_rule, options, table_source(primes));
}

std::vector<ProfilePoint> convergence_profile(const PolyFamily& family, const std::vector<std::uint64_t>& bounds,
                                              const std::optional<OmegaOverride>& override_rule,
                                              const HLOptions& options) {
    if (bounds.empty()) return {};
    for (std::size_t i = 0; i < bounds.size(); ++i) {
        if (bounds[i] < 2) throw DomainError("prime bound must be at least 2");
        if (i && bounds[i] <= bounds[i - 1]) throw DomainError("profile bounds must be increasing");
    }
    require_admissible(family, options.waive_irreducibility);
    HLOptions opt = options;
    opt.checkpoint_path.reset();
    EngineOut e = run_engine(family, bounds.back(), bounds, override_rule, opt, sieve_source());
    std::vector<ProfilePoint> out;
    for (std::size_t i = 0; i < bounds.size(); ++i) out.push_back({bounds[i], std::exp(e.at_cut[i].value())});
    return out;
}

} // namespace bhc
