#pragma once

#include <cstdint>
#include <initializer_list>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "bhc/bigint.hpp"

namespace bhc {

/// Univariate polynomial with integer coefficients, constant term first.
class IntPolynomial {
public:
    IntPolynomial() = default;
    explicit IntPolynomial(std::vector<BigInt> coefficients);
    IntPolynomial(std::initializer_list<long> coefficients);

    /// Accepts "12t+5", "48t^2-12t+1", "t" or a coefficient list "5,12".
    static IntPolynomial parse(std::string_view text);
    static IntPolynomial monomial(const BigInt& c, unsigned degree);

    /// 0 for constants, including the zero polynomial.
    unsigned degree() const { return coeffs_.empty() ? 0 : static_cast<unsigned>(coeffs_.size() - 1); }
    bool is_zero() const { return coeffs_.empty(); }
    bool is_constant() const { return coeffs_.size() <= 1; }
    const std::vector<BigInt>& coefficients() const { return coeffs_; }
    BigInt coeff(std::size_t i) const { return i < coeffs_.size() ? coeffs_[i] : BigInt(0); }
    BigInt leading() const { return coeffs_.empty() ? BigInt(0) : coeffs_.back(); }
    /// gcd of the coefficients (non-negative).
    BigInt content() const;

    BigInt evaluate(const BigInt& t) const;
    BigInt operator()(const BigInt& t) const { return evaluate(t); }
    /// f(t) mod r with t, r < 2^63.
    std::uint64_t evaluate_mod(std::uint64_t t, std::uint64_t r) const;
    /// Coefficients reduced into [0, r).
    std::vector<std::uint64_t> reduced(std::uint64_t r) const;

    IntPolynomial operator+(const IntPolynomial& o) const;
    IntPolynomial operator-(const IntPolynomial& o) const;
    IntPolynomial operator*(const IntPolynomial& o) const;
    IntPolynomial operator*(const BigInt& c) const;
    /// Division by an integer that divides every coefficient; throws otherwise.
    IntPolynomial divide_exact(const BigInt& c) const;
    /// f(-t).
    IntPolynomial negate_argument() const;
    /// f(g(t)).
    IntPolynomial compose(const IntPolynomial& g) const;
    IntPolynomial derivative() const;

    std::string to_string() const;
    bool operator==(const IntPolynomial& o) const { return coeffs_ == o.coeffs_; }

private:
    void trim();
    std::vector<BigInt> coeffs_;
};

IntPolynomial pow(const IntPolynomial& f, unsigned e);

/// Res(f, g) via fraction-free elimination on the Sylvester matrix.
BigInt resultant(const IntPolynomial& f, const IntPolynomial& g);
/// Discriminant of a quadratic b^2 - 4ac.
BigInt quadratic_discriminant(const IntPolynomial& f);

/// Ordered, nonempty list of non-constant members f_1..f_k.
class PolyFamily {
public:
    explicit PolyFamily(std::vector<IntPolynomial> members);

    std::span<const IntPolynomial> members() const { return members_; }
    const IntPolynomial& operator[](std::size_t i) const { return members_[i]; }
    std::size_t k() const { return members_.size(); }
    unsigned product_degree() const { return product_degree_; }
    IntPolynomial product() const;
    /// 16-hex-digit content hash of the member list.
    std::string digest() const;
    /// "{12t+5, 3t+1, 2t+1}"
    std::string to_string() const;

    bool operator==(const PolyFamily& o) const { return members_ == o.members_; }

private:
    std::vector<IntPolynomial> members_;
    unsigned product_degree_ = 0;
};

enum class Irreducibility { yes, no, unverified };

struct AdmissibilityReport {
    std::vector<bool> positive_leading;
    std::vector<Irreducibility> irreducible;
    bool fixed_divisor_free = true;
    std::optional<std::uint64_t> violating_prime;

    /// Conditions (1) and (3) hold and no member is known reducible; unverified
    /// irreducibility is accepted only when waived.
    bool admissible(bool waive_irreducibility = false) const;
    std::string describe() const;
};

/// Bunyakovsky/Schinzel conditions. Throws DomainError on a constant member.
AdmissibilityReport check_admissible(const PolyFamily& family);

/// Throws InadmissibleFamily with the report's description when not admissible.
void require_admissible(const PolyFamily& family, bool waive_irreducibility);

/// Distinct residues modulo r; `all` marks the polynomial vanishing identically.
struct ResidueSet {
    bool all = false;
    std::vector<std::uint64_t> roots;

    std::uint64_t count(std::uint64_t r) const { return all ? r : roots.size(); }
};

enum class RootMethod { automatic, brute_force, algebraic };

inline constexpr std::uint64_t kBruteForceRootBound = 1000;

/// Roots of poly modulo the prime r. Throws DomainError if r is not prime.
ResidueSet roots_mod(const IntPolynomial& poly, std::uint64_t r, RootMethod method = RootMethod::automatic);
/// Number of distinct roots without extracting them.
std::uint64_t count_roots_mod(const IntPolynomial& poly, std::uint64_t r,
                              RootMethod method = RootMethod::automatic);

/// Number of distinct roots of f_1...f_k modulo r (shared roots counted once).
std::uint64_t omega_f(const PolyFamily& family, std::uint64_t r, RootMethod method = RootMethod::automatic);

/// Closed-form omega rules for families whose root counts are known exactly.
struct OmegaOverride {
    enum class Kind {
        /// {2t+1, ((2t+1)^(2^k)+1)/2}, k >= 1
        half_plus,
        /// {t, Phi_{n^(j+1)}(+-t)}: the projective/unitary degree pairs
        cyclotomic_pair,
    };
    Kind kind = Kind::half_plus;
    unsigned k = 1;       // half_plus
    std::uint64_t n = 3;  // cyclotomic_pair: order n^(j+1) = n * e
    std::uint64_t e = 1;

    std::uint64_t operator()(std::uint64_t r) const;
    std::string describe() const;
};

/// Repeated omega_f evaluation for one family. Precomputes the integers whose
/// prime divisors are the only places where members can share roots or drop
/// degree; away from those primes omega is the sum of per-member counts.
class OmegaEvaluator {
public:
    explicit OmegaEvaluator(const PolyFamily& family, std::optional<OmegaOverride> override_rule = std::nullopt);

    std::uint64_t operator()(std::uint64_t r) const;
    /// Same answer without the override or the fast path.
    std::uint64_t generic(std::uint64_t r) const;
    const PolyFamily& family() const { return family_; }
    bool has_override() const { return override_.has_value(); }

private:
    enum class MemberKind { linear, quadratic, general };
    struct Member {
        MemberKind kind;
        std::optional<std::int64_t> disc_small;
        BigInt disc;
    };

    PolyFamily family_;
    std::optional<OmegaOverride> override_;
    std::vector<Member> members_;
    bool always_generic_ = false;
    BigInt exceptional_;
    std::optional<std::uint64_t> exceptional_small_;
};

} // namespace bhc
