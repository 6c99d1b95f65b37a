#include "bhc/group_catalog.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>

#include "bhc/errors.hpp"

namespace bhc {

namespace {

IntPolynomial lin(long a, long b) { return IntPolynomial{b, a}; }

void merge_factors(Factorization& into, const BigInt& v) {
    if (v <= 1) return;
    const Factorization f = factorize(v);
    for (const auto& [p, e] : f.factors()) into.add(p, e);
}

Factorization remove_factors(const Factorization& f, const BigInt& d) {
    Factorization out(f.n());
    auto rest = f.factors();
    if (d > 1) {
        const Factorization fd = factorize(d);
        for (const auto& [p, e] : fd.factors()) rest[p] -= e;
    }
    for (const auto& [p, e] : rest)
        if (e) out.add(p, e);
    return out;
}

BigInt power(const BigInt& b, unsigned long e) {
    BigInt r;
    mpz_pow_ui(r.get_mpz_t(), b.get_mpz_t(), e);
    return r;
}

void require_prime_power(const BigInt& q) {
    if (q < 2 || !factorize(q).is_prime_power()) throw DomainError(q.get_str() + " is not a prime power");
}

bool is_power_of(std::uint64_t e, std::uint64_t n) {
    while (e > 1 && e % n == 0) e /= n;
    return e == 1;
}

std::vector<unsigned long> parse_numbers(std::string_view s, std::string_view spec) {
    std::vector<unsigned long> out;
    while (true) {
        auto comma = s.find(',');
        std::string_view tok = s.substr(0, comma);
        unsigned long v = 0;
        auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
        if (ec != std::errc() || ptr != tok.data() + tok.size() || tok.empty())
            throw DomainError("bad family spec '" + std::string(spec) + "'");
        out.push_back(v);
        if (comma == std::string_view::npos) break;
        s.remove_prefix(comma + 1);
    }
    return out;
}

} // namespace

std::string GroupOrder::name() const {
    switch (family) {
    case GroupFamily::PSL2: return "PSL2(" + q.get_str() + ")";
    case GroupFamily::PSU3: return "PSU3(" + q.get_str() + ")";
    case GroupFamily::PSp: return "PSp" + std::to_string(2 * n) + "(" + q.get_str() + ")";
    }
    return "?";
}

GroupOrder group_order(GroupFamily family, const BigInt& q, unsigned n) {
    require_prime_power(q);
    GroupOrder g;
    g.family = family;
    g.q = q;
    Factorization full;
    BigInt product = 1, d = 1;
    auto take = [&](const BigInt& v) {
        product *= v;
        merge_factors(full, v);
    };
    switch (family) {
    case GroupFamily::PSL2:
        g.n = 2;
        take(q);
        take(q - 1);
        take(q + 1);
        d = gcd(BigInt(q - 1), BigInt(2));
        break;
    case GroupFamily::PSU3:
        g.n = 3;
        take(power(q, 3));
        take(q + 1);
        take(q * q - q + 1);
        take(q - 1);
        take(q + 1);
        d = gcd(BigInt(q + 1), BigInt(3));
        break;
    case GroupFamily::PSp:
        if (n < 1) throw DomainError("PSp rank must be at least 1");
        g.n = n;
        take(power(q, static_cast<unsigned long>(n) * n));
        for (unsigned i = 1; i <= n; ++i) {
            take(power(q, i) - 1);
            take(power(q, i) + 1);
        }
        d = gcd(BigInt(q - 1), BigInt(2));
        break;
    }
    g.order = product / d;
    Factorization reduced = remove_factors(full, d);
    g.factorization = Factorization(g.order);
    for (const auto& [p, e] : reduced.factors()) g.factorization.add(p, e);
    return g;
}

std::vector<GroupOrder> sporadic_s6_members() {
    return {group_order(GroupFamily::PSL2, 8), group_order(GroupFamily::PSL2, 9)};
}

char case_letter(CaseLabel c) { return static_cast<char>('a' + static_cast<int>(c)); }

std::optional<CaseLabel> parse_case(std::string_view s) {
    if (s.size() != 1) return std::nullopt;
    char c = static_cast<char>(std::tolower(static_cast<unsigned char>(s[0])));
    if (c < 'a' || c > 'd') return std::nullopt;
    return static_cast<CaseLabel>(c - 'a');
}

std::optional<CaseLabel> classify_six_primes(std::uint64_t p) {
    if (p <= 13) throw DomainError("classification needs p > 13");
    if (!is_prime_u64(p)) throw DomainError(std::to_string(p) + " is not prime");
    struct Shape {
        CaseLabel label;
        std::uint64_t below, above; // p-1 = below*r, p+1 = above*s
    };
    static constexpr Shape shapes[] = {
        {CaseLabel::A, 4, 6}, {CaseLabel::B, 6, 4}, {CaseLabel::C, 2, 12}, {CaseLabel::D, 12, 2}};
    for (const auto& s : shapes) {
        if ((p - 1) % s.below || (p + 1) % s.above) continue;
        if (is_prime_u64((p - 1) / s.below) && is_prime_u64((p + 1) / s.above)) return s.label;
    }
    return std::nullopt;
}

std::string provenance_name(Provenance p) {
    switch (p) {
    case Provenance::six_primes: return "six-primes";
    case Provenance::m_primes: return "m-primes";
    case Provenance::psu3: return "psu3";
    case Provenance::projective: return "projective";
    case Provenance::unitary_degree: return "unitary";
    case Provenance::sophie_germain: return "sophie-germain";
    case Provenance::twin: return "twin";
    case Provenance::half_plus: return "half-plus";
    case Provenance::symplectic: return "symplectic";
    }
    return "?";
}

NamedFamily six_primes_family(CaseLabel c) {
    std::vector<IntPolynomial> m;
    switch (c) {
    case CaseLabel::A: m = {lin(12, 5), lin(3, 1), lin(2, 1)}; break;
    case CaseLabel::B: m = {lin(12, 7), lin(2, 1), lin(3, 2)}; break;
    case CaseLabel::C: m = {lin(12, -1), lin(6, -1), lin(1, 0)}; break;
    case CaseLabel::D: m = {lin(12, 1), lin(1, 0), lin(6, 1)}; break;
    }
    const std::string l(1, case_letter(c));
    return {PolyFamily(std::move(m)), Provenance::six_primes, "case-" + l,
            "PSL2(p) with Omega = 6, case (" + l + "): p = f1, r = f2, s = f3", std::nullopt, false};
}

NamedFamily m_primes_family(unsigned m) {
    if (m < 6) throw DomainError("m-primes family needs m >= 6");
    if (m > 40) throw DomainError("m-primes family: m too large");
    BigInt a = power(3, m - 5);
    std::vector<IntPolynomial> mem{IntPolynomial(std::vector<BigInt>{2 * a - 1, 4 * a}),
                                   IntPolynomial(std::vector<BigInt>{(a - 1) / 2, a}), lin(2, 1)};
    return {PolyFamily(std::move(mem)), Provenance::m_primes, "m-primes:" + std::to_string(m),
            "PSL2(p) with Omega = " + std::to_string(m) + ", a = 3^" + std::to_string(m - 5), std::nullopt, false};
}

NamedFamily psu3_family(CaseLabel c) {
    NamedFamily base = six_primes_family(c);
    std::vector<IntPolynomial> m(base.family.members().begin(), base.family.members().end());
    const IntPolynomial& f1 = m[0];
    IntPolynomial f4 = f1 * f1 - f1 + IntPolynomial{1};
    if (c == CaseLabel::A || c == CaseLabel::C) f4 = f4.divide_exact(3);
    m.push_back(f4);
    const std::string l(1, case_letter(c));
    return {PolyFamily(std::move(m)), Provenance::psu3, "psu3:" + l,
            "PSU3(p) over the case (" + l + ") triple, fourth member from p^2-p+1", std::nullopt, false};
}

namespace {

NamedFamily degree_pair(std::uint64_t n, std::uint64_t e, bool alternating) {
    if (n < 3 || !is_prime_u64(n)) throw InadmissibleFamily("n must be a prime >= 3");
    if (e < 1 || !is_power_of(e, n)) throw InadmissibleFamily("e must be a power of n (cyclotomic factor otherwise)");
    if ((n - 1) * e > 4096) throw DomainError("degree too large");
    std::vector<BigInt> c((n - 1) * e + 1, BigInt(0));
    for (std::uint64_t j = 0; j < n; ++j) c[j * e] = (alternating && j % 2) ? -1 : 1;
    OmegaOverride ov{OmegaOverride::Kind::cyclotomic_pair, 0, n, e};
    const std::string ne = std::to_string(n) + "," + std::to_string(e);
    if (alternating)
        return {PolyFamily({lin(1, 0), IntPolynomial(std::move(c))}), Provenance::unitary_degree, "unitary:" + ne,
                "PSU_n(p^e) degree (q^n+1)/(q+1), (n,e) = (" + ne + ")", ov, true};
    return {PolyFamily({lin(1, 0), IntPolynomial(std::move(c))}), Provenance::projective, "projective:" + ne,
            "projective prime (q^n-1)/(q-1), (n,e) = (" + ne + ")", ov, true};
}

} // namespace

NamedFamily projective_family(std::uint64_t n, std::uint64_t e) { return degree_pair(n, e, false); }
NamedFamily unitary_degree_family(std::uint64_t n, std::uint64_t e) { return degree_pair(n, e, true); }

NamedFamily half_plus_family(unsigned k) {
    if (k > 10) throw DomainError("half-plus family: k too large");
    const IntPolynomial u = lin(2, 1);
    IntPolynomial f2 = (pow(u, 1u << k) + IntPolynomial{1}).divide_exact(2);
    std::optional<OmegaOverride> ov;
    if (k >= 1) ov = OmegaOverride{OmegaOverride::Kind::half_plus, k, 0, 0};
    return {PolyFamily({u, f2}), Provenance::half_plus, "half-plus:" + std::to_string(k),
            "PSL2(q) of degree (q+1)/2, q = p^(2^" + std::to_string(k) + ")", ov, true};
}

NamedFamily symplectic_family(unsigned j, unsigned k) {
    NamedFamily f = half_plus_family(j + k);
    f.provenance = Provenance::symplectic;
    f.tag = "symplectic:" + std::to_string(j) + "," + std::to_string(k);
    f.source = "PSp_2n(q) of degree (q^n+1)/2, n = 2^" + std::to_string(j) + ", q = p^(2^" + std::to_string(k) + ")";
    return f;
}

NamedFamily sophie_germain_family() {
    return {PolyFamily({lin(1, 0), lin(2, 1)}), Provenance::sophie_germain, "sophie-germain",
            "Sophie Germain pair; PSL2(q) of degree (q-1)/2", std::nullopt, false};
}

NamedFamily twin_family() {
    return {PolyFamily({lin(1, 0), lin(1, 2)}), Provenance::twin, "twin", "twin prime pair", std::nullopt, false};
}

NamedFamily family_from_spec(std::string_view spec) {
    auto bad = [&]() -> NamedFamily { throw DomainError("unknown family spec '" + std::string(spec) + "'"); };
    if (spec.rfind("case-", 0) == 0 || spec.size() == 1) {
        auto c = parse_case(spec.size() == 1 ? spec : spec.substr(5));
        if (!c) return bad();
        return six_primes_family(*c);
    }
    if (spec == "sophie-germain") return sophie_germain_family();
    if (spec == "twin") return twin_family();
    auto colon = spec.find(':');
    if (colon == std::string_view::npos) return bad();
    const std::string_view name = spec.substr(0, colon), args = spec.substr(colon + 1);
    if (name == "psu3") {
        auto c = parse_case(args);
        if (!c) return bad();
        return psu3_family(*c);
    }
    auto nums = parse_numbers(args, spec);
    if (name == "m-primes" && nums.size() == 1) return m_primes_family(static_cast<unsigned>(nums[0]));
    if (name == "half-plus" && nums.size() == 1) return half_plus_family(static_cast<unsigned>(nums[0]));
    if (name == "projective" && nums.size() == 2) return projective_family(nums[0], nums[1]);
    if (name == "unitary" && nums.size() == 2) return unitary_degree_family(nums[0], nums[1]);
    if (name == "symplectic" && nums.size() == 2)
        return symplectic_family(static_cast<unsigned>(nums[0]), static_cast<unsigned>(nums[1]));
    return bad();
}

std::vector<NamedFamily> catalog() {
    std::vector<NamedFamily> out;
    for (auto c : {CaseLabel::A, CaseLabel::B, CaseLabel::C, CaseLabel::D}) out.push_back(six_primes_family(c));
    for (unsigned m : {6u, 7u, 8u}) out.push_back(m_primes_family(m));
    for (auto c : {CaseLabel::A, CaseLabel::B, CaseLabel::C, CaseLabel::D}) out.push_back(psu3_family(c));
    for (auto [n, e] : {std::pair{3, 1}, {5, 1}, {3, 3}}) {
        out.push_back(projective_family(n, e));
        out.push_back(unitary_degree_family(n, e));
    }
    for (unsigned k = 0; k <= 4; ++k) out.push_back(half_plus_family(k));
    out.push_back(symplectic_family(1, 1));
    out.push_back(sophie_germain_family());
    out.push_back(twin_family());
    return out;
}

std::vector<SmEntry> enumerate_Sm(unsigned m, std::uint64_t p_limit) {
    if (m < 4) throw DomainError("enumerate_Sm needs m >= 4");
    std::vector<SmEntry> out;
    for (std::uint64_t p = 17; p <= p_limit; p += 2) {
        if (!is_prime_u64(p)) continue;
        // Omega(p(p^2-1)/2) = Omega(p-1) + Omega(p+1)
        unsigned omega = big_omega(p - 1) + big_omega(p + 1);
        if (omega != m) continue;
        SmEntry e{p, omega, std::nullopt};
        if (m == 6) e.label = classify_six_primes(p);
        out.push_back(e);
    }
    return out;
}

bool is_power_graph_cograph_candidate(const BigInt& q) {
    if (q < 5 || mpz_even_p(q.get_mpz_t())) throw DomainError("q must be an odd prime power >= 5");
    require_prime_power(q);
    auto ok = [](const BigInt& v) {
        Factorization f = factorize(v);
        return f.is_prime_power() || f.big_omega() == 2;
    };
    return ok((q - 1) / 2) && ok((q + 1) / 2);
}

} // namespace bhc
