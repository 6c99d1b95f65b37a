#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "bhc/poly.hpp"
#include "bhc/primes.hpp"

namespace bhc {

enum class GroupFamily { PSL2, PSU3, PSp };

struct GroupOrder {
    GroupFamily family = GroupFamily::PSL2;
    BigInt q;
    unsigned n = 2; // PSp_{2n}(q) rank; 2 for PSL2, 3 for PSU3
    BigInt order;
    Factorization factorization;

    unsigned big_omega() const { return factorization.big_omega(); }
    std::string name() const;
};

/// |PSL2(q)| = q(q^2-1)/gcd(2,q-1); |PSU3(q)| = q^3(q^3+1)(q^2-1)/gcd(3,q+1);
/// |PSp_{2n}(q)| = q^(n^2) prod_{i<=n}(q^(2i)-1)/gcd(2,q-1). q must be a prime power.
GroupOrder group_order(GroupFamily family, const BigInt& q, unsigned n = 1);

/// PSL2(8) and PSL2(9), the two members of S_6 outside the PSL2(p) series.
std::vector<GroupOrder> sporadic_s6_members();

enum class CaseLabel { A, B, C, D };

char case_letter(CaseLabel c); // 'a'..'d'
std::optional<CaseLabel> parse_case(std::string_view s);

/// Case of p when Omega(p^2-1) = 6, nullopt otherwise.
/// Throws DomainError for p <= 13 or p not prime.
std::optional<CaseLabel> classify_six_primes(std::uint64_t p);

enum class Provenance { six_primes, m_primes, psu3, projective, unitary_degree, sophie_germain, twin, half_plus, symplectic };

std::string provenance_name(Provenance p);

struct NamedFamily {
    PolyFamily family;
    Provenance provenance;
    /// Spec accepted by family_from_spec, e.g. "case-a", "projective:3,1".
    std::string tag;
    /// Where the family comes from, in words.
    std::string source;
    std::optional<OmegaOverride> omega_override;
    /// Members are irreducible by construction (cyclotomic-type) even where the
    /// modular degree test cannot certify it.
    bool irreducible_by_construction = false;
};

NamedFamily six_primes_family(CaseLabel c);
/// {4at+2a-1, at+(a-1)/2, 2t+1} with a = 3^(m-5), m >= 6.
NamedFamily m_primes_family(unsigned m);
/// Six-primes triple plus f1^2-f1+1 (divided by 3 in cases A and C).
NamedFamily psu3_family(CaseLabel c);
/// {t, sum_{j<n} t^(je)}; n prime >= 3, e a power of n.
NamedFamily projective_family(std::uint64_t n, std::uint64_t e);
/// {t, sum_{j<n} (-1)^j t^(je)}.
NamedFamily unitary_degree_family(std::uint64_t n, std::uint64_t e);
/// {2t+1, ((2t+1)^(2^k)+1)/2}.
NamedFamily half_plus_family(unsigned k);
/// half_plus_family(j + k).
NamedFamily symplectic_family(unsigned j, unsigned k);
NamedFamily sophie_germain_family();
NamedFamily twin_family();

/// "case-a" | "a" | "m-primes:M" | "psu3:C" | "projective:N,E" | "unitary:N,E" |
/// "half-plus:K" | "symplectic:J,K" | "sophie-germain" | "twin".
NamedFamily family_from_spec(std::string_view spec);

/// The named families used for listing and the oracle suite.
std::vector<NamedFamily> catalog();

struct SmEntry {
    std::uint64_t p;
    unsigned omega;
    std::optional<CaseLabel> label; // set for m == 6
};

/// Primes 13 < p <= p_limit with Omega(|PSL2(p)|) == m.
std::vector<SmEntry> enumerate_Sm(unsigned m, std::uint64_t p_limit);

/// (q-1)/2 and (q+1)/2 are each a prime power or a product of two primes.
/// Throws DomainError unless q is an odd prime power >= 5.
bool is_power_graph_cograph_candidate(const BigInt& q);

} // namespace bhc
