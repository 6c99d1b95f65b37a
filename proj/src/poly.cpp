#include "bhc/poly.hpp"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <numeric>
#include <set>
#include <sstream>

#include "bhc/errors.hpp"
#include "bhc/primes.hpp"
#include "polymod.hpp"

namespace bhc {

using detail::ModPoly;

// ---------------------------------------------------------------------------
// IntPolynomial

IntPolynomial::IntPolynomial(std::vector<BigInt> coefficients) : coeffs_(std::move(coefficients)) { trim(); }

IntPolynomial::IntPolynomial(std::initializer_list<long> coefficients) {
    coeffs_.reserve(coefficients.size());
    for (long c : coefficients) coeffs_.emplace_back(c);
    trim();
}

void IntPolynomial::trim() {
    while (!coeffs_.empty() && sgn(coeffs_.back()) == 0) coeffs_.pop_back();
}

IntPolynomial IntPolynomial::monomial(const BigInt& c, unsigned degree) {
    std::vector<BigInt> v(degree + 1, BigInt(0));
    v[degree] = c;
    return IntPolynomial(std::move(v));
}

namespace {

bool is_var(char c) { return c == 't' || c == 'x' || c == 'T' || c == 'X'; }

BigInt parse_signed_integer(std::string token, std::string_view whole) {
    if (!token.empty() && token[0] == '+') token.erase(0, 1);
    if (token.empty() || token == "-") throw DomainError("bad polynomial literal '" + std::string(whole) + "'");
    for (std::size_t i = token[0] == '-' ? 1 : 0; i < token.size(); ++i)
        if (!std::isdigit(static_cast<unsigned char>(token[i])))
            throw DomainError("bad polynomial literal '" + std::string(whole) + "'");
    return big_from_string(token);
}

} // namespace

IntPolynomial IntPolynomial::parse(std::string_view text) {
    std::string s;
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
    if (s.empty()) throw DomainError("empty polynomial literal");

    if (std::none_of(s.begin(), s.end(), is_var)) {
        std::vector<BigInt> coeffs;
        std::stringstream ss(s);
        std::string tok;
        while (std::getline(ss, tok, ',')) coeffs.push_back(parse_signed_integer(tok, text));
        if (!s.empty() && s.back() == ',') throw DomainError("bad polynomial literal '" + std::string(text) + "'");
        return IntPolynomial(std::move(coeffs));
    }

    auto fail = [&] { throw DomainError("bad polynomial literal '" + std::string(text) + "'"); };
    std::vector<BigInt> coeffs;
    std::size_t i = 0;
    while (i < s.size()) {
        bool negative = false;
        if (s[i] == '+' || s[i] == '-') {
            negative = s[i] == '-';
            ++i;
        } else if (i != 0) {
            fail();
        }
        std::size_t start = i;
        while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
        BigInt c = start == i ? BigInt(1) : big_from_string(s.substr(start, i - start));
        bool had_digits = start != i;
        unsigned long deg = 0;
        if (i < s.size() && s[i] == '*') {
            if (!had_digits) fail();
            ++i;
            if (i >= s.size() || !is_var(s[i])) fail();
        }
        if (i < s.size() && is_var(s[i])) {
            ++i;
            deg = 1;
            if (i < s.size() && s[i] == '^') {
                ++i;
                std::size_t e0 = i;
                while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
                if (e0 == i || i - e0 > 4) fail();
                deg = std::stoul(s.substr(e0, i - e0));
            }
        } else if (!had_digits) {
            fail();
        }
        if (coeffs.size() <= deg) coeffs.resize(deg + 1, BigInt(0));
        coeffs[deg] += negative ? BigInt(-c) : c;
    }
    return IntPolynomial(std::move(coeffs));
}

BigInt IntPolynomial::content() const {
    BigInt g = 0;
    for (const auto& c : coeffs_) g = gcd(g, c);
    return abs(g);
}

BigInt IntPolynomial::evaluate(const BigInt& t) const {
    BigInt acc = 0;
    for (std::size_t i = coeffs_.size(); i-- > 0;) acc = acc * t + coeffs_[i];
    return acc;
}

std::uint64_t IntPolynomial::evaluate_mod(std::uint64_t t, std::uint64_t r) const {
    return detail::horner_mod(reduced(r), t % r, r);
}

std::vector<std::uint64_t> IntPolynomial::reduced(std::uint64_t r) const {
    std::vector<std::uint64_t> out(coeffs_.size());
    for (std::size_t i = 0; i < coeffs_.size(); ++i) out[i] = big_mod_u64(coeffs_[i], r);
    return out;
}

IntPolynomial IntPolynomial::operator+(const IntPolynomial& o) const {
    std::vector<BigInt> v(std::max(coeffs_.size(), o.coeffs_.size()), BigInt(0));
    for (std::size_t i = 0; i < coeffs_.size(); ++i) v[i] += coeffs_[i];
    for (std::size_t i = 0; i < o.coeffs_.size(); ++i) v[i] += o.coeffs_[i];
    return IntPolynomial(std::move(v));
}

IntPolynomial IntPolynomial::operator-(const IntPolynomial& o) const { return *this + o * BigInt(-1); }

IntPolynomial IntPolynomial::operator*(const IntPolynomial& o) const {
    if (is_zero() || o.is_zero()) return {};
    std::vector<BigInt> v(coeffs_.size() + o.coeffs_.size() - 1, BigInt(0));
    for (std::size_t i = 0; i < coeffs_.size(); ++i)
        for (std::size_t j = 0; j < o.coeffs_.size(); ++j) v[i + j] += coeffs_[i] * o.coeffs_[j];
    return IntPolynomial(std::move(v));
}

IntPolynomial IntPolynomial::operator*(const BigInt& c) const {
    std::vector<BigInt> v = coeffs_;
    for (auto& x : v) x *= c;
    return IntPolynomial(std::move(v));
}

IntPolynomial IntPolynomial::divide_exact(const BigInt& c) const {
    if (sgn(c) == 0) throw DomainError("division by zero");
    std::vector<BigInt> v = coeffs_;
    for (auto& x : v) {
        if (!mpz_divisible_p(x.get_mpz_t(), c.get_mpz_t()))
            throw DomainError(to_string() + " is not divisible by " + c.get_str());
        mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), c.get_mpz_t());
    }
    return IntPolynomial(std::move(v));
}

IntPolynomial IntPolynomial::negate_argument() const {
    std::vector<BigInt> v = coeffs_;
    for (std::size_t i = 1; i < v.size(); i += 2) v[i] = -v[i];
    return IntPolynomial(std::move(v));
}

IntPolynomial IntPolynomial::compose(const IntPolynomial& g) const {
    IntPolynomial acc;
    for (std::size_t i = coeffs_.size(); i-- > 0;) acc = acc * g + IntPolynomial(std::vector<BigInt>{coeffs_[i]});
    return acc;
}

IntPolynomial IntPolynomial::derivative() const {
    if (coeffs_.size() <= 1) return {};
    std::vector<BigInt> v(coeffs_.size() - 1);
    for (std::size_t i = 1; i < coeffs_.size(); ++i) v[i - 1] = coeffs_[i] * static_cast<unsigned long>(i);
    return IntPolynomial(std::move(v));
}

std::string IntPolynomial::to_string() const {
    if (coeffs_.empty()) return "0";
    std::string out;
    for (std::size_t i = coeffs_.size(); i-- > 0;) {
        const BigInt& c = coeffs_[i];
        if (sgn(c) == 0) continue;
        BigInt mag = abs(c);
        if (sgn(c) < 0)
            out += '-';
        else if (!out.empty())
            out += '+';
        if (i == 0 || mag != 1) out += mag.get_str();
        if (i >= 1) out += 't';
        if (i >= 2) out += '^' + std::to_string(i);
    }
    return out;
}

IntPolynomial pow(const IntPolynomial& f, unsigned e) {
    IntPolynomial result{1};
    IntPolynomial base = f;
    while (e) {
        if (e & 1) result = result * base;
        e >>= 1;
        if (e) base = base * base;
    }
    return result;
}

namespace {

// Bareiss fraction-free determinant; destroys m.
BigInt bareiss_det(std::vector<std::vector<BigInt>>& m) {
    const std::size_t n = m.size();
    if (n == 0) return 1;
    int sign = 1;
    BigInt prev = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (sgn(m[k][k]) == 0) {
            std::size_t swap_row = k + 1;
            while (swap_row < n && sgn(m[swap_row][k]) == 0) ++swap_row;
            if (swap_row == n) return 0;
            std::swap(m[k], m[swap_row]);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j) {
                BigInt v = m[i][j] * m[k][k] - m[i][k] * m[k][j];
                mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), prev.get_mpz_t());
                m[i][j] = std::move(v);
            }
        }
        prev = m[k][k];
    }
    BigInt d = m[n - 1][n - 1];
    return sign < 0 ? BigInt(-d) : d;
}

} // namespace

BigInt resultant(const IntPolynomial& f, const IntPolynomial& g) {
    if (f.is_zero() || g.is_zero()) return 0;
    const std::size_t m = f.degree(), n = g.degree();
    if (m == 0) {
        BigInt r;
        mpz_pow_ui(r.get_mpz_t(), f.coeff(0).get_mpz_t(), n);
        return r;
    }
    if (n == 0) {
        BigInt r;
        mpz_pow_ui(r.get_mpz_t(), g.coeff(0).get_mpz_t(), m);
        return r;
    }
    const std::size_t size = m + n;
    std::vector<std::vector<BigInt>> s(size, std::vector<BigInt>(size, BigInt(0)));
    for (std::size_t row = 0; row < n; ++row)
        for (std::size_t j = 0; j <= m; ++j) s[row][row + j] = f.coeff(m - j);
    for (std::size_t row = 0; row < m; ++row)
        for (std::size_t j = 0; j <= n; ++j) s[n + row][row + j] = g.coeff(n - j);
    return bareiss_det(s);
}

BigInt quadratic_discriminant(const IntPolynomial& f) {
    if (f.degree() != 2) throw DomainError("discriminant requested for non-quadratic " + f.to_string());
    return f.coeff(1) * f.coeff(1) - 4 * f.coeff(2) * f.coeff(0);
}

// ---------------------------------------------------------------------------
// PolyFamily

PolyFamily::PolyFamily(std::vector<IntPolynomial> members) : members_(std::move(members)) {
    if (members_.empty()) throw DomainError("a polynomial family needs at least one member");
    for (const auto& f : members_) {
        if (f.is_constant()) throw DomainError("constant member " + f.to_string() + " in polynomial family");
        product_degree_ += f.degree();
    }
}

IntPolynomial PolyFamily::product() const {
    IntPolynomial p{1};
    for (const auto& f : members_) p = p * f;
    return p;
}

std::string PolyFamily::digest() const {
    std::uint64_t h = 14695981039346656037ull;
    auto mix = [&h](unsigned char c) {
        h ^= c;
        h *= 1099511628211ull;
    };
    for (const auto& f : members_) {
        for (const auto& c : f.coefficients()) {
            for (char ch : c.get_str()) mix(static_cast<unsigned char>(ch));
            mix(',');
        }
        mix(';');
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

std::string PolyFamily::to_string() const {
    std::string out = "{";
    for (std::size_t i = 0; i < members_.size(); ++i) {
        if (i) out += ", ";
        out += members_[i].to_string();
    }
    return out + "}";
}

// ---------------------------------------------------------------------------
// Admissibility

namespace {

bool is_square(const BigInt& v) { return sgn(v) >= 0 && mpz_perfect_square_p(v.get_mpz_t()); }

// Possible degrees of a factor over Q, from the factorisation pattern modulo
// good primes. Irreducible once only {0, d} survive.
Irreducibility irreducible_by_patterns(const IntPolynomial& f) {
    const unsigned d = f.degree();
    std::vector<bool> possible(d + 1, true);
    unsigned good = 0;
    for (std::uint64_t p = 3; p < 500 && good < 40; p += 2) {
        if (!is_prime_u64(p) || big_mod_u64(f.leading(), p) == 0) continue;
        ModPoly fp = detail::make_monic(f.reduced(p), p);
        if (detail::degree(fp) != static_cast<int>(d)) continue;
        ModPoly g = detail::gcd(fp, detail::derivative(fp, p), p);
        if (detail::degree(g) > 0) continue; // not squarefree mod p
        ++good;
        std::vector<bool> sums(d + 1, false);
        sums[0] = true;
        for (unsigned deg : detail::factor_degrees(fp, p))
            for (unsigned s = d; s >= deg; --s)
                if (sums[s - deg]) sums[s] = true;
        bool only_trivial = true;
        for (unsigned s = 1; s < d; ++s) {
            possible[s] = possible[s] && sums[s];
            if (possible[s]) only_trivial = false;
        }
        if (only_trivial) return Irreducibility::yes;
    }
    return Irreducibility::unverified;
}

Irreducibility classify_member(const IntPolynomial& f) {
    if (f.content() != 1) return Irreducibility::no;
    if (f.degree() == 1) return Irreducibility::yes;
    if (f.degree() == 2) return is_square(quadratic_discriminant(f)) ? Irreducibility::no : Irreducibility::yes;
    if (sgn(f.coeff(0)) == 0) return Irreducibility::no; // divisible by t
    return irreducible_by_patterns(f);
}

bool vanishes_identically(const PolyFamily& family, std::uint64_t r) {
    std::vector<ModPoly> red;
    for (const auto& f : family.members()) red.push_back(f.reduced(r));
    for (std::uint64_t t = 0; t < r; ++t) {
        std::uint64_t prod = 1;
        for (const auto& g : red) prod = mulmod(prod, detail::horner_mod(g, t, r), r);
        if (prod != 0) return false;
    }
    return true;
}

} // namespace

bool AdmissibilityReport::admissible(bool waive_irreducibility) const {
    if (!fixed_divisor_free) return false;
    if (std::find(positive_leading.begin(), positive_leading.end(), false) != positive_leading.end()) return false;
    for (auto i : irreducible) {
        if (i == Irreducibility::no) return false;
        if (i == Irreducibility::unverified && !waive_irreducibility) return false;
    }
    return true;
}

std::string AdmissibilityReport::describe() const {
    std::vector<std::string> issues;
    for (std::size_t i = 0; i < positive_leading.size(); ++i)
        if (!positive_leading[i]) issues.push_back("member " + std::to_string(i + 1) + ": leading coefficient not positive");
    for (std::size_t i = 0; i < irreducible.size(); ++i) {
        if (irreducible[i] == Irreducibility::no)
            issues.push_back("member " + std::to_string(i + 1) + ": reducible");
        else if (irreducible[i] == Irreducibility::unverified)
            issues.push_back("member " + std::to_string(i + 1) + ": irreducibility unverified");
    }
    if (!fixed_divisor_free && violating_prime)
        issues.push_back("product vanishes identically mod " + std::to_string(*violating_prime));
    if (issues.empty()) return "admissible";
    std::string out;
    for (std::size_t i = 0; i < issues.size(); ++i) out += (i ? "; " : "") + issues[i];
    return out;
}

AdmissibilityReport check_admissible(const PolyFamily& family) {
    AdmissibilityReport rep;
    std::set<std::uint64_t> candidates;
    for (const auto& f : family.members()) {
        if (f.is_constant()) throw DomainError("constant member " + f.to_string());
        rep.positive_leading.push_back(sgn(f.leading()) > 0);
        rep.irreducible.push_back(classify_member(f));
        BigInt c = f.content();
        if (c > 1) {
            const Factorization fc = factorize(c);
            for (const auto& [p, e] : fc.factors())
                if (auto small = big_to_u64(p)) candidates.insert(*small);
        }
    }
    for (std::uint64_t r = 2; r <= family.product_degree(); ++r)
        if (is_prime_u64(r)) candidates.insert(r);
    for (std::uint64_t r : candidates) {
        if (vanishes_identically(family, r)) {
            rep.fixed_divisor_free = false;
            rep.violating_prime = r;
            break;
        }
    }
    return rep;
}

void require_admissible(const PolyFamily& family, bool waive_irreducibility) {
    AdmissibilityReport rep = check_admissible(family);
    if (!rep.admissible(waive_irreducibility))
        throw InadmissibleFamily("family " + family.to_string() + " is not admissible: " + rep.describe());
}

// ---------------------------------------------------------------------------
// Roots modulo r

namespace {

void require_prime_modulus(std::uint64_t r) {
    if (!is_prime_u64(r)) throw DomainError("modulus " + std::to_string(r) + " is not prime");
}

bool use_brute_force(RootMethod method, std::uint64_t r) {
    return method == RootMethod::brute_force || (method == RootMethod::automatic && r < kBruteForceRootBound) || r == 2;
}

ResidueSet brute_roots(const ModPoly& g, std::uint64_t r) {
    ResidueSet out;
    for (std::uint64_t t = 0; t < r; ++t)
        if (detail::horner_mod(g, t, r) == 0) out.roots.push_back(t);
    return out;
}

ResidueSet algebraic_roots(ModPoly g, std::uint64_t r) {
    ResidueSet out;
    const int d = detail::degree(g);
    if (d == 1) {
        out.roots.push_back(mulmod(g[0] == 0 ? 0 : r - g[0], invmod(g[1], r), r));
        return out;
    }
    if (d == 2) {
        const std::uint64_t a = g[2], b = g[1], c = g[0];
        std::uint64_t disc = (mulmod(b, b, r) + r - mulmod(4 % r, mulmod(a, c, r), r)) % r;
        const std::uint64_t inv2a = invmod(mulmod(2, a, r), r);
        const std::uint64_t minus_b = b == 0 ? 0 : r - b;
        if (disc == 0) {
            out.roots.push_back(mulmod(minus_b, inv2a, r));
        } else if (jacobi(static_cast<std::int64_t>(disc), r) == 1) {
            std::uint64_t s = sqrt_mod(disc, r);
            std::uint64_t r1 = mulmod((minus_b + s) % r, inv2a, r);
            std::uint64_t r2 = mulmod((minus_b + r - s) % r, inv2a, r);
            out.roots = {std::min(r1, r2), std::max(r1, r2)};
        }
        return out;
    }
    ModPoly monic = detail::make_monic(std::move(g), r);
    std::mt19937_64 rng(r * 0x9e3779b97f4a7c15ull + static_cast<std::uint64_t>(d));
    out.roots = detail::extract_roots(detail::split_part(monic, r), r, rng);
    return out;
}

std::uint64_t algebraic_count(ModPoly g, std::uint64_t r) {
    const int d = detail::degree(g);
    if (d == 1) return 1;
    if (d == 2) {
        const std::uint64_t a = g[2], b = g[1], c = g[0];
        std::uint64_t disc = (mulmod(b, b, r) + r - mulmod(4 % r, mulmod(a, c, r), r)) % r;
        if (disc == 0) return 1;
        return jacobi(static_cast<std::int64_t>(disc), r) == 1 ? 2 : 0;
    }
    return static_cast<std::uint64_t>(detail::degree(detail::split_part(detail::make_monic(std::move(g), r), r)));
}

} // namespace

ResidueSet roots_mod(const IntPolynomial& poly, std::uint64_t r, RootMethod method) {
    require_prime_modulus(r);
    ModPoly g = poly.reduced(r);
    detail::trim(g);
    ResidueSet out;
    if (g.empty()) {
        out.all = true;
        return out;
    }
    if (g.size() == 1) return out;
    if (use_brute_force(method, r)) return brute_roots(g, r);
    return algebraic_roots(std::move(g), r);
}

std::uint64_t count_roots_mod(const IntPolynomial& poly, std::uint64_t r, RootMethod method) {
    require_prime_modulus(r);
    ModPoly g = poly.reduced(r);
    detail::trim(g);
    if (g.empty()) return r;
    if (g.size() == 1) return 0;
    if (use_brute_force(method, r)) return brute_roots(g, r).roots.size();
    return algebraic_count(std::move(g), r);
}

std::uint64_t omega_f(const PolyFamily& family, std::uint64_t r, RootMethod method) {
    require_prime_modulus(r);
    std::vector<ModPoly> red;
    for (const auto& f : family.members()) {
        ModPoly g = f.reduced(r);
        detail::trim(g);
        if (g.empty()) return r;
        if (g.size() > 1) red.push_back(std::move(g));
    }
    if (use_brute_force(method, r)) {
        std::uint64_t count = 0;
        for (std::uint64_t t = 0; t < r; ++t) {
            for (const auto& g : red)
                if (detail::horner_mod(g, t, r) == 0) {
                    ++count;
                    break;
                }
        }
        return count;
    }
    // union of roots = degree of the lcm of the split parts
    ModPoly lcm{1};
    for (auto& g : red) {
        ModPoly s = detail::split_part(detail::make_monic(std::move(g), r), r);
        ModPoly common = detail::gcd(lcm, s, r);
        lcm = detail::mul(lcm, detail::quot(s, common, r), r);
    }
    return static_cast<std::uint64_t>(detail::degree(lcm));
}

// ---------------------------------------------------------------------------
// Closed-form omega

std::uint64_t OmegaOverride::operator()(std::uint64_t r) const {
    switch (kind) {
    case Kind::half_plus: {
        if (r == 2) return 0;
        const std::uint64_t m = std::uint64_t{1} << (k + 1);
        return r % m == 1 ? (std::uint64_t{1} << k) + 1 : 1;
    }
    case Kind::cyclotomic_pair: {
        if (r == n) return 2;
        return r % (n * e) == 1 ? 1 + (n - 1) * e : 1;
    }
    }
    return 0;
}

std::string OmegaOverride::describe() const {
    if (kind == Kind::half_plus) {
        const std::string m = std::to_string(std::uint64_t{1} << (k + 1));
        return "omega(2)=0; omega(r)=" + std::to_string((std::uint64_t{1} << k) + 1) + " if r=1 mod " + m + ", else 1";
    }
    return "omega(" + std::to_string(n) + ")=2; omega(r)=" + std::to_string(1 + (n - 1) * e) + " if r=1 mod " +
           std::to_string(n * e) + ", else 1";
}

OmegaEvaluator::OmegaEvaluator(const PolyFamily& family, std::optional<OmegaOverride> override_rule)
    : family_(family), override_(override_rule) {
    BigInt e = 1;
    for (const auto& f : family_.members()) {
        e *= f.leading();
        Member m{MemberKind::general, std::nullopt, BigInt(0)};
        if (f.degree() == 1) {
            m.kind = MemberKind::linear;
        } else if (f.degree() == 2) {
            m.kind = MemberKind::quadratic;
            m.disc = quadratic_discriminant(f);
            m.disc_small = big_to_i64(m.disc);
        }
        members_.push_back(std::move(m));
    }
    for (std::size_t i = 0; i < family_.k(); ++i)
        for (std::size_t j = i + 1; j < family_.k(); ++j) {
            BigInt res = resultant(family_[i], family_[j]);
            if (sgn(res) == 0) always_generic_ = true;
            e *= res;
        }
    exceptional_ = abs(e);
    exceptional_small_ = big_to_u64(exceptional_);
}

std::uint64_t OmegaEvaluator::generic(std::uint64_t r) const { return omega_f(family_, r, RootMethod::automatic); }

std::uint64_t OmegaEvaluator::operator()(std::uint64_t r) const {
    if (override_) return (*override_)(r);
    if (always_generic_ || r < kBruteForceRootBound) return generic(r);
    const bool exceptional = exceptional_small_ ? (*exceptional_small_ % r == 0) : big_mod_u64(exceptional_, r) == 0;
    if (exceptional) return generic(r);
    std::uint64_t sum = 0;
    for (std::size_t i = 0; i < members_.size(); ++i) {
        const Member& m = members_[i];
        switch (m.kind) {
        case MemberKind::linear:
            sum += 1;
            break;
        case MemberKind::quadratic: {
            int j = m.disc_small ? jacobi(*m.disc_small, r) : jacobi(m.disc, r);
            sum += static_cast<std::uint64_t>(1 + j);
            break;
        }
        case MemberKind::general:
            sum += count_roots_mod(family_[i], r, RootMethod::algebraic);
            break;
        }
    }
    return sum;
}

} // namespace bhc
