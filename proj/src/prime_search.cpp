#include "bhc/prime_search.hpp"

#include <algorithm>
#include <cstring>
#include <memory>
#include <mutex>
#include <ostream>

#include <json.hpp>

#include "atomic_file.hpp"
#include "bhc/errors.hpp"
#include "bhc/parallel.hpp"
#include "bhc/simd.hpp"

namespace bhc {

using json = nlohmann::json;

namespace {

constexpr std::uint64_t kPresieveMax = 17;
constexpr std::size_t kStrikeBlock = std::size_t{1} << 17;
constexpr std::size_t kScanBlock = std::size_t{1} << 16;

// Horner in 128 bits; false on overflow.
bool eval_i128(const std::vector<std::int64_t>& c, std::uint64_t t, __int128& out) {
    __int128 acc = 0;
    const __int128 tt = t;
    for (std::size_t i = c.size(); i-- > 0;) {
        if (__builtin_mul_overflow(acc, tt, &acc)) return false;
        if (__builtin_add_overflow(acc, static_cast<__int128>(c[i]), &acc)) return false;
    }
    out = acc;
    return true;
}

// First t >= 1 beyond which f(t) > level for all real t (Cauchy bound of f - level).
std::uint64_t exceed_bound(const IntPolynomial& f, const BigInt& level) {
    BigInt m = 0;
    for (std::size_t j = 0; j < f.degree(); ++j) {
        BigInt c = abs(j == 0 ? BigInt(f.coeff(0) - level) : f.coeff(j));
        if (c > m) m = c;
    }
    BigInt t = m / f.leading() + 2;
    auto v = big_to_u64(t);
    if (!v || *v > (std::uint64_t{1} << 32)) throw ResourceError("member " + f.to_string() + " grows too slowly to sieve");
    return *v;
}

} // namespace

void SearchConfig::validate() const {
    if (segment_length < (std::uint64_t{1} << 10)) throw DomainError("segment_length must be at least 2^10");
    if (segment_length > (std::uint64_t{1} << 31)) throw DomainError("segment_length must be at most 2^31");
    if (sieve_prime_bound < 2) throw DomainError("sieve_prime_bound must be at least 2");
    if (sieve_prime_bound > (std::uint64_t{1} << 31)) throw DomainError("sieve_prime_bound must be below 2^31");
}

std::size_t CandidateBitmap::count() const { return simd::count_nonzero(bytes_); }

std::vector<std::uint64_t> CandidateBitmap::survivors() const {
    std::vector<std::uint32_t> pos(bytes_.size());
    std::size_t n = simd::nonzero_positions(bytes_, pos.data());
    std::vector<std::uint64_t> out(n);
    for (std::size_t i = 0; i < n; ++i) out[i] = t_lo_ + pos[i];
    return out;
}

// ---------------------------------------------------------------------------
// SearchPlan

SearchPlan::SearchPlan(const PolyFamily& family, std::uint64_t sieve_prime_bound)
    : family_(family), bound_(sieve_prime_bound) {
    if (bound_ < 2) throw DomainError("sieve prime bound must be at least 2");
    for (const auto& f : family_.members()) {
        Member m{f, {}, true};
        for (const auto& c : f.coefficients()) {
            auto s = big_to_i64(c);
            if (!s) {
                m.has_small = false;
                break;
            }
            m.small.push_back(*s);
        }
        order_.push_back(std::move(m));
    }
    std::stable_sort(order_.begin(), order_.end(), [](const Member& a, const Member& b) {
        if (a.poly.degree() != b.poly.degree()) return a.poly.degree() < b.poly.degree();
        return abs(a.poly.leading()) < abs(b.poly.leading());
    });

    PrimeTable table = sieve_primes(bound_);
    sieving_primes_.assign(table.begin(), table.end());

    // union of member roots per prime
    auto roots_of = [&](std::uint64_t r) {
        std::vector<std::uint64_t> all;
        for (const auto& f : family_.members()) {
            ResidueSet rs = roots_mod(f, r);
            if (rs.all) {
                always_divisible_.push_back(r);
                all.resize(r);
                for (std::uint64_t i = 0; i < r; ++i) all[i] = i;
                return all;
            }
            all.insert(all.end(), rs.roots.begin(), rs.roots.end());
        }
        std::sort(all.begin(), all.end());
        all.erase(std::unique(all.begin(), all.end()), all.end());
        return all;
    };

    std::vector<std::pair<std::uint64_t, std::vector<std::uint64_t>>> small;
    for (std::uint64_t r : sieving_primes_) {
        auto roots = roots_of(r);
        if (r <= kPresieveMax) {
            period_ *= r;
            small.emplace_back(r, std::move(roots));
            continue;
        }
        for (std::uint64_t rho : roots) {
            entry_prime_.push_back(static_cast<std::uint32_t>(r));
            entry_root_.push_back(static_cast<std::uint32_t>(rho));
        }
    }
    pattern_.assign(2 * period_, 1);
    for (const auto& [r, roots] : small)
        for (std::uint64_t rho : roots)
            for (std::uint64_t i = rho; i < pattern_.size(); i += r) pattern_[i] = 0;

    // t >= 1 where some member equals a sieving prime, or is not positive
    const BigInt level = big_from_u64(bound_);
    for (const auto& f : family_.members()) {
        if (sgn(f.leading()) <= 0) throw DomainError("member " + f.to_string() + " has a non-positive leading coefficient");
        const std::uint64_t reach = exceed_bound(f, level);
        for (std::uint64_t t = 1; t <= reach; ++t) {
            BigInt v = f(big_from_u64(t));
            if (sgn(v) <= 0) {
                nonpositive_.push_back(t);
            } else if (v <= level) {
                std::uint64_t small_v = *big_to_u64(v);
                if (std::binary_search(sieving_primes_.begin(), sieving_primes_.end(), small_v)) exceptions_.push_back(t);
            }
        }
    }
    for (auto* v : {&exceptions_, &nonpositive_}) {
        std::sort(v->begin(), v->end());
        v->erase(std::unique(v->begin(), v->end()), v->end());
    }
}

void SearchPlan::check_positive(std::uint64_t t_lo, std::uint64_t t_hi) const {
    auto it = std::lower_bound(nonpositive_.begin(), nonpositive_.end(), t_lo);
    if (it != nonpositive_.end() && *it < t_hi)
        throw DomainError("a member of " + family_.to_string() + " is not positive at t = " + std::to_string(*it));
}

bool SearchPlan::survives_exactly(std::uint64_t t) const {
    const BigInt bt = big_from_u64(t);
    for (const auto& m : order_) {
        BigInt v = m.poly(bt);
        if (v < 4 || is_prime(v)) continue;
        for (std::uint64_t r : sieving_primes_) {
            if (BigInt(big_from_u64(r) * big_from_u64(r)) > v) break;
            if (mpz_divisible_ui_p(v.get_mpz_t(), static_cast<unsigned long>(r))) return false;
        }
    }
    return true;
}

void SearchPlan::sieve(std::uint64_t t_lo, std::span<std::uint8_t> out) const {
    const std::size_t len = out.size();
    if (len == 0) return;
    std::uint64_t phase = t_lo % period_;
    for (std::size_t filled = 0; filled < len;) {
        std::size_t n = static_cast<std::size_t>(std::min<std::uint64_t>(len - filled, period_));
        std::memcpy(out.data() + filled, pattern_.data() + phase, n);
        filled += n;
        phase = (phase + n) % period_;
    }

    const std::size_t entries = entry_prime_.size();
    std::vector<std::uint64_t> next(entries);
    for (std::size_t e = 0; e < entries; ++e) {
        const std::uint64_t r = entry_prime_[e];
        next[e] = (entry_root_[e] + r - t_lo % r) % r;
    }
    std::uint8_t* bytes = out.data();
    for (std::size_t block = 0; block < len; block += kStrikeBlock) {
        const std::uint64_t end = std::min(len, block + kStrikeBlock);
        for (std::size_t e = 0; e < entries; ++e) {
            std::uint64_t pos = next[e];
            const std::uint64_t r = entry_prime_[e];
            for (; pos < end; pos += r) bytes[pos] = 0;
            next[e] = pos;
        }
    }

    auto it = std::lower_bound(exceptions_.begin(), exceptions_.end(), t_lo);
    for (; it != exceptions_.end() && *it < t_lo + len; ++it) bytes[*it - t_lo] = survives_exactly(*it) ? 1 : 0;
}

bool SearchPlan::all_prime(std::uint64_t t) const {
    for (const auto& m : order_) {
        __int128 v;
        if (m.has_small && eval_i128(m.small, t, v)) {
            if (v < 2) return false;
            if (v <= static_cast<__int128>(~std::uint64_t{0})) {
                if (!is_prime_u64(static_cast<std::uint64_t>(v))) return false;
            } else if (primality(big_from_i128(v)) == Primality::composite) {
                return false;
            }
        } else if (!is_prime(m.poly(big_from_u64(t)))) {
            return false;
        }
    }
    return true;
}

CandidateBitmap sieve_segment(const PolyFamily& family, std::uint64_t t_lo, std::uint64_t t_hi,
                              const PrimeTable& primes) {
    if (t_lo < 1) throw DomainError("sieve_segment: t_lo must be at least 1");
    if (t_hi <= t_lo) return CandidateBitmap(t_lo, t_lo);
    if (t_hi - t_lo > (std::uint64_t{1} << 32)) throw DomainError("sieve_segment: range too long");
    SearchPlan plan(family, std::max<std::uint64_t>(2, primes.limit()));
    plan.check_positive(t_lo, t_hi);
    CandidateBitmap bm(t_lo, t_hi);
    plan.sieve(t_lo, bm.bytes());
    return bm;
}

// ---------------------------------------------------------------------------
// Counting

namespace {

struct Scratch {
    std::vector<std::uint8_t> bytes;
    std::vector<std::uint32_t> positions;
};

class ScratchPool {
public:
    std::unique_ptr<Scratch> acquire() {
        std::lock_guard lock(m_);
        if (free_.empty()) return std::make_unique<Scratch>();
        auto s = std::move(free_.back());
        free_.pop_back();
        return s;
    }
    void release(std::unique_ptr<Scratch> s) {
        std::lock_guard lock(m_);
        free_.push_back(std::move(s));
    }

private:
    std::mutex m_;
    std::vector<std::unique_ptr<Scratch>> free_;
};

struct SegmentOut {
    std::uint64_t count = 0;
    std::vector<std::uint64_t> hits;
};

struct SearchCheckpoint {
    std::uint64_t next_start = 1;
    std::uint64_t partial_count = 0;
};

std::optional<SearchCheckpoint> load_search_checkpoint(const std::filesystem::path& path, const std::string& digest,
                                                       std::uint64_t x) {
    auto text = detail::read_file(path);
    if (!text) return std::nullopt;
    json j;
    try {
        j = json::parse(*text);
    } catch (const json::exception& e) {
        throw DomainError("unreadable checkpoint " + path.string() + ": " + e.what());
    }
    if (j.value("family_digest", "") != digest || j.value("x", std::uint64_t{0}) != x) return std::nullopt;
    return SearchCheckpoint{j.at("next_segment_start").get<std::uint64_t>(), j.at("partial_count").get<std::uint64_t>()};
}

void save_search_checkpoint(const std::filesystem::path& path, const std::string& digest, std::uint64_t x,
                            const SearchCheckpoint& cp) {
    json j{{"family_digest", digest}, {"x", x}, {"next_segment_start", cp.next_start}, {"partial_count", cp.partial_count}};
    detail::write_file_atomic(path, j.dump(2) + "\n");
}

} // namespace

SearchResult count_simultaneous_primes(const PolyFamily& family, std::uint64_t x, const SearchConfig& config) {
    const auto t0 = std::chrono::steady_clock::now();
    config.validate();
    if (x < 1) throw DomainError("x must be at least 1");
    if (x >= (std::uint64_t{1} << 62)) throw DomainError("x too large");

    const SearchPlan plan(family, config.sieve_prime_bound);
    plan.check_positive(1, x + 1);

    SearchResult res;
    res.family_digest = family.digest();
    res.x = x;
    if (config.collect_hits) res.hits.emplace();

    SearchCheckpoint state;
    if (config.checkpoint_path)
        if (auto cp = load_search_checkpoint(*config.checkpoint_path, res.family_digest, x)) state = *cp;
    res.resumed_from = state.next_start;

    const std::uint64_t L = config.segment_length;
    const std::uint64_t end = x + 1;
    const std::uint64_t remaining = state.next_start >= end ? 0 : end - state.next_start;
    const std::uint64_t segments = (remaining + L - 1) / L;
    const std::size_t wave = std::max<std::size_t>(1, config.thread_count) * 4;
    ScratchPool pool;
    std::vector<SegmentOut> outs;

    auto out_of_time = [&] {
        if (config.stop && config.stop->load()) return true;
        if (config.interrupt && config.interrupt()) return true;
        return config.time_limit && std::chrono::steady_clock::now() - t0 >= *config.time_limit;
    };

    const std::uint64_t base = state.next_start;
    for (std::uint64_t w0 = 0; w0 < segments; w0 += wave) {
        if (out_of_time()) {
            res.complete = false;
            break;
        }
        const std::uint64_t w1 = std::min<std::uint64_t>(segments, w0 + wave);
        outs.assign(w1 - w0, SegmentOut{});
        parallel_for(w1 - w0, config.thread_count, [&](std::size_t i) {
            const std::uint64_t lo = base + (w0 + i) * L;
            const std::uint64_t hi = std::min(end, lo + L);
            auto scratch = pool.acquire();
            scratch->bytes.resize(hi - lo);
            scratch->positions.resize(kScanBlock);
            std::span<std::uint8_t> bytes(scratch->bytes.data(), hi - lo);
            plan.sieve(lo, bytes);
            SegmentOut& out = outs[i];
            for (std::size_t b = 0; b < bytes.size(); b += kScanBlock) {
                auto block = bytes.subspan(b, std::min(kScanBlock, bytes.size() - b));
                std::size_t n = simd::nonzero_positions(block, scratch->positions.data());
                for (std::size_t j = 0; j < n; ++j) {
                    const std::uint64_t t = lo + b + scratch->positions[j];
                    if (plan.all_prime(t)) {
                        ++out.count;
                        if (config.collect_hits) out.hits.push_back(t);
                    }
                }
            }
            pool.release(std::move(scratch));
        });
        for (std::size_t i = 0; i < outs.size(); ++i) {
            state.partial_count += outs[i].count;
            res.segment_counts.push_back(outs[i].count);
            if (res.hits)
                for (std::uint64_t t : outs[i].hits)
                    if (res.hits->size() < config.hit_limit) res.hits->push_back(t);
        }
        state.next_start = std::min(end, base + w1 * L);
        res.segments_done += w1 - w0;
        if (config.checkpoint_path) save_search_checkpoint(*config.checkpoint_path, res.family_digest, x, state);
    }
    if (segments == 0 && config.checkpoint_path)
        save_search_checkpoint(*config.checkpoint_path, res.family_digest, x, state);

    res.count = state.partial_count;
    res.next_start = state.next_start;
    res.wall_time = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - t0);
    return res;
}

double relative_error(std::uint64_t q, double e) {
    if (q == 0) throw DomainError("relative error is undefined for q = 0");
    const double qd = static_cast<double>(q);
    return (e - qd) / qd * 100.0;
}

void write_hits_csv(std::ostream& out, const PolyFamily& family, std::span<const std::uint64_t> hits) {
    out << "t";
    for (std::size_t i = 1; i <= family.k(); ++i) out << ",f" << i;
    out << "\n";
    for (std::uint64_t t : hits) {
        const BigInt bt = big_from_u64(t);
        out << t;
        for (const auto& f : family.members()) out << ',' << f(bt).get_str();
        out << "\n";
    }
}

} // namespace bhc
