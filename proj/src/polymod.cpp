#include "polymod.hpp"

#include <algorithm>

#include "bhc/primes.hpp"

namespace bhc::detail {

namespace {

constexpr std::uint64_t kWideLimit = std::uint64_t{1} << 32;

inline std::uint64_t neg(std::uint64_t a, std::uint64_t r) { return a == 0 ? 0 : r - a; }

} // namespace

void trim(ModPoly& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

std::uint64_t horner_mod(const ModPoly& coeffs, std::uint64_t t, std::uint64_t r) {
    std::uint64_t acc = 0;
    for (std::size_t i = coeffs.size(); i-- > 0;) {
        acc = mulmod(acc, t, r) + coeffs[i];
        if (acc >= r) acc -= r;
    }
    return acc;
}

ModPoly make_monic(ModPoly a, std::uint64_t r) {
    trim(a);
    if (a.empty() || a.back() == 1) return a;
    std::uint64_t inv = invmod(a.back(), r);
    for (auto& c : a) c = mulmod(c, inv, r);
    return a;
}

ModPoly sub(ModPoly a, const ModPoly& b, std::uint64_t r) {
    if (a.size() < b.size()) a.resize(b.size(), 0);
    for (std::size_t i = 0; i < b.size(); ++i) a[i] = a[i] >= b[i] ? a[i] - b[i] : a[i] + (r - b[i]);
    trim(a);
    return a;
}

ModPoly mul(const ModPoly& a, const ModPoly& b, std::uint64_t r) {
    if (a.empty() || b.empty()) return {};
    const bool wide = r >= kWideLimit;
    std::vector<unsigned __int128> acc(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) {
            acc[i + j] += static_cast<unsigned __int128>(a[i]) * b[j];
            if (wide) acc[i + j] %= r;
        }
    ModPoly out(acc.size());
    for (std::size_t i = 0; i < acc.size(); ++i) out[i] = static_cast<std::uint64_t>(acc[i] % r);
    trim(out);
    return out;
}

void divmod(const ModPoly& a, const ModPoly& b, std::uint64_t r, ModPoly& quotient, ModPoly& remainder) {
    remainder = a;
    trim(remainder);
    quotient.clear();
    const int db = degree(b);
    if (degree(remainder) < db) return;
    const std::uint64_t inv_lead = invmod(b.back(), r);
    quotient.assign(remainder.size() - b.size() + 1, 0);
    for (int k = degree(remainder); k >= db; --k) {
        std::uint64_t c = mulmod(remainder[k], inv_lead, r);
        quotient[k - db] = c;
        if (c == 0) continue;
        for (int j = 0; j <= db; ++j) {
            std::uint64_t s = mulmod(c, b[j], r);
            auto& t = remainder[k - db + j];
            t = t >= s ? t - s : t + (r - s);
        }
    }
    trim(remainder);
    trim(quotient);
}

ModPoly rem(const ModPoly& a, const ModPoly& b, std::uint64_t r) {
    ModPoly q, rm;
    divmod(a, b, r, q, rm);
    return rm;
}

ModPoly quot(const ModPoly& a, const ModPoly& b, std::uint64_t r) {
    ModPoly q, rm;
    divmod(a, b, r, q, rm);
    return q;
}

ModPoly gcd(ModPoly a, ModPoly b, std::uint64_t r) {
    trim(a);
    trim(b);
    while (!b.empty()) {
        ModPoly t = rem(a, b, r);
        a = std::move(b);
        b = std::move(t);
    }
    return make_monic(std::move(a), r);
}

ModPoly derivative(const ModPoly& a, std::uint64_t r) {
    if (a.size() <= 1) return {};
    ModPoly d(a.size() - 1);
    for (std::size_t i = 1; i < a.size(); ++i) d[i - 1] = mulmod(a[i], i % r, r);
    trim(d);
    return d;
}

QuotientRing::QuotientRing(const ModPoly& monic_modulus, std::uint64_t r)
    : r_(r), d_(monic_modulus.size() - 1), f_(monic_modulus) {
    if (d_ >= 2) {
        fold_.reserve(d_ - 1);
        ModPoly cur(d_);
        for (std::size_t j = 0; j < d_; ++j) cur[j] = neg(f_[j], r_); // x^d mod f
        fold_.push_back(cur);
        for (std::size_t i = 1; i + 1 < d_; ++i) {
            // multiply by x and fold the overflow coefficient back
            std::uint64_t top = cur[d_ - 1];
            for (std::size_t j = d_ - 1; j > 0; --j) cur[j] = cur[j - 1];
            cur[0] = 0;
            for (std::size_t j = 0; j < d_; ++j) {
                cur[j] += mulmod(top, fold_[0][j], r_);
                if (cur[j] >= r_) cur[j] -= r_;
            }
            fold_.push_back(cur);
        }
    }
}

ModPoly QuotientRing::reduce_wide(std::vector<unsigned __int128>& acc) const {
    const bool wide = r_ >= kWideLimit;
    ModPoly out(d_, 0);
    if (acc.size() <= d_) {
        for (std::size_t j = 0; j < acc.size(); ++j) out[j] = static_cast<std::uint64_t>(acc[j] % r_);
        trim(out);
        return out;
    }
    std::vector<std::uint64_t> high(acc.size() - d_);
    for (std::size_t i = 0; i < high.size(); ++i) high[i] = static_cast<std::uint64_t>(acc[d_ + i] % r_);
    for (std::size_t j = 0; j < d_; ++j) {
        unsigned __int128 s = acc[j] % r_;
        for (std::size_t i = 0; i < high.size(); ++i) {
            s += static_cast<unsigned __int128>(high[i]) * fold_[i][j];
            if (wide) s %= r_;
        }
        out[j] = static_cast<std::uint64_t>(s % r_);
    }
    trim(out);
    return out;
}

ModPoly QuotientRing::mul(const ModPoly& a, const ModPoly& b) const {
    if (a.empty() || b.empty()) return {};
    if (d_ == 1) return reduce(detail::mul(a, b, r_));
    const bool wide = r_ >= kWideLimit;
    std::vector<unsigned __int128> acc(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        const std::uint64_t ai = a[i];
        if (ai == 0) continue;
        for (std::size_t j = 0; j < b.size(); ++j) {
            acc[i + j] += static_cast<unsigned __int128>(ai) * b[j];
            if (wide) acc[i + j] %= r_;
        }
    }
    return reduce_wide(acc);
}

ModPoly QuotientRing::reduce(const ModPoly& a) const { return rem(a, f_, r_); }

ModPoly QuotientRing::pow(ModPoly base, std::uint64_t e) const {
    base = reduce(base);
    ModPoly result{1};
    if (d_ == 0) return {};
    result = reduce(result);
    while (e) {
        if (e & 1) result = mul(result, base);
        e >>= 1;
        if (e) base = mul(base, base);
    }
    return result;
}

ModPoly QuotientRing::pow_x(std::uint64_t e) const { return pow(ModPoly{0, 1}, e); }

ModPoly split_part(const ModPoly& monic_f, std::uint64_t r) {
    if (degree(monic_f) <= 0) return {1};
    QuotientRing ring(monic_f, r);
    ModPoly h = sub(ring.pow_x(r), ModPoly{0, 1}, r);
    return gcd(std::move(h), monic_f, r);
}

namespace {

void split_into(const ModPoly& g, std::uint64_t r, std::mt19937_64& rng, std::vector<std::uint64_t>& out) {
    const int d = degree(g);
    if (d <= 0) return;
    if (d == 1) {
        out.push_back(neg(g[0], r));
        return;
    }
    if (r == 2) {
        for (std::uint64_t t = 0; t < 2; ++t)
            if (horner_mod(g, t, r) == 0) out.push_back(t);
        return;
    }
    QuotientRing ring(g, r);
    std::uniform_int_distribution<std::uint64_t> pick(0, r - 1);
    for (;;) {
        ModPoly shifted{pick(rng), 1};
        ModPoly h = sub(ring.pow(shifted, (r - 1) / 2), ModPoly{1}, r);
        ModPoly f = gcd(h, g, r);
        const int df = degree(f);
        if (df > 0 && df < d) {
            split_into(f, r, rng, out);
            split_into(quot(g, f, r), r, rng, out);
            return;
        }
    }
}

} // namespace

std::vector<std::uint64_t> extract_roots(const ModPoly& split, std::uint64_t r, std::mt19937_64& rng) {
    std::vector<std::uint64_t> out;
    split_into(split, r, rng, out);
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<unsigned> factor_degrees(const ModPoly& monic_squarefree, std::uint64_t r) {
    std::vector<unsigned> out;
    ModPoly rest = monic_squarefree;
    ModPoly h{0, 1};
    for (unsigned i = 1; degree(rest) >= static_cast<int>(2 * i); ++i) {
        QuotientRing ring(rest, r);
        h = ring.pow(h, r);
        ModPoly g = gcd(sub(h, ModPoly{0, 1}, r), rest, r);
        const int dg = degree(g);
        if (dg > 0) {
            for (int c = 0; c < dg / static_cast<int>(i); ++c) out.push_back(i);
            rest = quot(rest, g, r);
            h = rem(h, rest, r);
        }
    }
    if (degree(rest) > 0) out.push_back(static_cast<unsigned>(degree(rest)));
    return out;
}

} // namespace bhc::detail
