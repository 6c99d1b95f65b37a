#include <doctest.h>

#include <random>

#include "bhc/errors.hpp"
#include "bhc/group_catalog.hpp"
#include "bhc/poly.hpp"
#include "oracle.hpp"

using namespace bhc;

namespace {

IntPolynomial P(const char* s) { return IntPolynomial::parse(s); }

std::vector<std::uint64_t> small_primes(std::uint64_t below) {
    std::vector<std::uint64_t> v;
    for (std::uint64_t r = 2; r < below; ++r)
        if (oracle::trial_prime(r)) v.push_back(r);
    return v;
}

} // namespace

TEST_CASE("parse and print") {
    CHECK(P("12t+5") == IntPolynomial{5, 12});
    CHECK(P("5,12") == IntPolynomial{5, 12});
    CHECK(P("48t^2-12t+1") == IntPolynomial{1, -12, 48});
    CHECK(P("-t^2+3*t-7") == IntPolynomial{-7, 3, -1});
    CHECK(P("t") == IntPolynomial{0, 1});
    CHECK(P("48t^2-12t+1").to_string() == "48t^2-12t+1");
    CHECK(P("-t^2+3t-7").to_string() == "-t^2+3t-7");
    CHECK(P("t^6+t^3+1").degree() == 6);
    CHECK(P("0,0,0").is_zero());
    CHECK(P("12x+5") == P("12t+5"));
    CHECK_THROWS(P("12y+5"));
    CHECK_THROWS(P(""));
    CHECK_THROWS(P("t^"));
}

TEST_CASE("evaluate") {
    CHECK(P("12t+5").evaluate(2) == 29);
    CHECK(P("48t^2-12t+1").evaluate(1) == 37);
    CHECK(P("7t^3-2t+11").evaluate(0) == 11);
    BigInt big = BigInt("123456789012345678901234567890");
    CHECK(P("t^2+1").evaluate(big) == big * big + 1);
    CHECK(P("48t^2-12t+1").evaluate_mod(1'000'000, 1'000'000'007ULL) ==
          big_mod_u64(P("48t^2-12t+1").evaluate(1'000'000), 1'000'000'007ULL));
}

TEST_CASE("arithmetic and resultant") {
    auto f = P("12t+5"), g = P("3t+1");
    CHECK(f * g == P("36t^2+27t+5"));
    CHECK((f * g).divide_exact(1) == f * g);
    CHECK_THROWS(P("3t+1").divide_exact(2));
    CHECK(P("t^2+t+1").negate_argument() == P("t^2-t+1"));
    CHECK(P("t^2").compose(P("2t+1")) == P("4t^2+4t+1"));
    CHECK(pow(P("2t+1"), 2) == P("4t^2+4t+1"));
    CHECK(resultant(P("t-2"), P("t-3")) == -1);
    CHECK(abs(resultant(P("12t+5"), P("3t+1"))) == 3);
    CHECK(quadratic_discriminant(P("48t^2-12t+1")) == 144 - 192);
    CHECK_THROWS_AS(quadratic_discriminant(P("t")), DomainError);
}

TEST_CASE("PolyFamily basics") {
    PolyFamily a({P("12t+5"), P("3t+1"), P("2t+1")});
    CHECK(a.k() == 3);
    CHECK(a.product_degree() == 3);
    CHECK(a.to_string() == "{12t+5, 3t+1, 2t+1}");
    CHECK(a.digest().size() == 16);
    CHECK(a.digest() != PolyFamily({P("12t+5"), P("3t+1")}).digest());
    CHECK_THROWS_AS(PolyFamily({}), DomainError);
    CHECK_THROWS_AS(PolyFamily({P("t"), P("5")}), DomainError);
}

TEST_CASE("admissibility examples") {
    auto ra = check_admissible(PolyFamily({P("12t+5"), P("3t+1"), P("2t+1")}));
    CHECK(ra.admissible());
    CHECK(ra.fixed_divisor_free);
    CHECK_FALSE(ra.violating_prime);

    auto rt = check_admissible(PolyFamily({P("t"), P("t+1")}));
    CHECK_FALSE(rt.fixed_divisor_free);
    REQUIRE(rt.violating_prime);
    CHECK(*rt.violating_prime == 2);
    CHECK_FALSE(rt.admissible());
    CHECK_THROWS_AS(require_admissible(PolyFamily({P("t"), P("t+1")}), false), InadmissibleFamily);

    CHECK(check_admissible(PolyFamily({P("t"), P("t^2+t+1")})).admissible());

    auto neg = check_admissible(PolyFamily({P("-t+5")}));
    CHECK_FALSE(neg.positive_leading[0]);
    CHECK_FALSE(neg.admissible());

    auto red = check_admissible(PolyFamily({P("t^2-1")}));
    CHECK(red.irreducible[0] == Irreducibility::no);
    CHECK(check_admissible(PolyFamily({P("2t+4")})).irreducible[0] == Irreducibility::no);
    CHECK(check_admissible(PolyFamily({P("t^2+1")})).irreducible[0] == Irreducibility::yes);
    // (t^2+1)(t^2+2): reducible but no rational root
    CHECK(check_admissible(PolyFamily({P("t^4+3t^2+2")})).irreducible[0] != Irreducibility::yes);
    CHECK(check_admissible(PolyFamily({P("t^4+t^3+t^2+t+1")})).irreducible[0] == Irreducibility::yes);
    // t^2+t+2 is always even
    auto fd = check_admissible(PolyFamily({P("t^2+t+2")}));
    CHECK_FALSE(fd.fixed_divisor_free);
    CHECK(fd.fixed_divisor_free == !fd.violating_prime.has_value());
    // t^3-t divisible by 6
    CHECK_FALSE(check_admissible(PolyFamily({P("t^3-t+6")})).fixed_divisor_free);
}

TEST_CASE("roots_mod examples") {
    auto prod = P("12t+5") * P("3t+1") * P("2t+1");
    auto r5 = roots_mod(prod, 5);
    CHECK(r5.roots == std::vector<std::uint64_t>{0, 2, 3});
    CHECK(roots_mod(P("2t+1"), 2).roots.empty());
    CHECK(roots_mod(P("48t^2-12t+1"), 7).roots.size() == 2);
    CHECK(roots_mod(P("6t+12"), 3).all);
    CHECK(roots_mod(P("6t+12"), 3).count(3) == 3);
    CHECK_THROWS_AS(roots_mod(P("t"), 9), DomainError);
    const auto q = P("48t^2-12t+1");
    const std::uint64_t big = 1'000'003;
    auto alg = roots_mod(q, big, RootMethod::algebraic);
    CHECK(alg.roots == roots_mod(q, big, RootMethod::brute_force).roots);
    CHECK(alg.roots.size() == (jacobi(-3, big) == 1 ? 2u : 0u));
    auto cubic = P("t^3-2");
    CHECK(roots_mod(cubic, big, RootMethod::algebraic).roots == roots_mod(cubic, big, RootMethod::brute_force).roots);
}

TEST_CASE("omega_f examples") {
    PolyFamily a({P("12t+5"), P("3t+1"), P("2t+1")});
    CHECK(omega_f(a, 2) == 1);
    CHECK(omega_f(a, 3) == 1);
    CHECK(omega_f(a, 7) == 3);
    PolyFamily e63({P("12t-1"), P("6t-1"), P("t"), P("48t^2-12t+1")});
    CHECK(omega_f(e63, 13) == 5);
}

TEST_CASE("omega: algebraic paths match brute force on random families") {
    std::mt19937_64 rng(99);
    const auto primes = small_primes(1000);
    for (int trial = 0; trial < 40; ++trial) {
        std::vector<IntPolynomial> members;
        int k = 1 + static_cast<int>(rng() % 3);
        for (int i = 0; i < k; ++i) {
            int deg = 1 + static_cast<int>(rng() % 4);
            std::vector<BigInt> c(deg + 1);
            for (auto& x : c) x = static_cast<long>(rng() % 2001) - 1000;
            if (c.back() == 0) c.back() = 1;
            members.emplace_back(std::move(c));
        }
        PolyFamily fam(members);
        OmegaEvaluator ev(fam);
        for (auto r : primes) {
            const std::uint64_t want = oracle::omega(fam, r);
            REQUIRE(omega_f(fam, r, RootMethod::algebraic) == want);
            REQUIRE(ev.generic(r) == want);
            REQUIRE(ev(r) == want);
            for (const auto& m : members) {
                auto rs = roots_mod(m, r, RootMethod::algebraic);
                REQUIRE(rs.count(r) == roots_mod(m, r, RootMethod::brute_force).count(r));
                REQUIRE(count_roots_mod(m, r, RootMethod::algebraic) == rs.count(r));
                for (auto t : rs.roots) REQUIRE(m.evaluate_mod(t, r) == 0);
            }
        }
    }
}

TEST_CASE("omega evaluator fast path on large primes") {
    // members with shared roots at primes dividing the resultant
    PolyFamily fam({P("t^2+1"), P("t+5"), P("t^3+t+7")});
    OmegaEvaluator ev(fam);
    const std::uint64_t res = 26; // Res(t^2+1, t+5) = 26
    CHECK(abs(resultant(P("t^2+1"), P("t+5"))) == res);
    for (std::uint64_t r = 1009; r < 40'000; r += 2) {
        if (!oracle::trial_prime(r)) continue;
        REQUIRE(ev(r) == omega_f(fam, r, RootMethod::brute_force));
    }
}

TEST_CASE("psu3:c omega rule") {
    PolyFamily e63({P("12t-1"), P("6t-1"), P("t"), P("48t^2-12t+1")});
    OmegaEvaluator ev(e63);
    for (std::uint64_t r = 5; r < 10'000; ++r) {
        if (!oracle::trial_prime(r)) continue;
        REQUIRE(ev(r) == (r % 3 == 1 ? 5u : 3u));
    }
}

TEST_CASE("omega bounds for catalog families") {
    const auto primes = small_primes(100'000);
    for (const auto& nf : catalog()) {
        OmegaEvaluator ev(nf.family, nf.omega_override);
        INFO(nf.tag);
        for (auto r : primes) {
            const auto w = ev(r);
            REQUIRE(w < r);
            REQUIRE(w <= nf.family.product_degree());
        }
    }
}

TEST_CASE("omega overrides agree with generic omega below 1000") {
    const auto primes = small_primes(1000);
    for (const auto& nf : catalog()) {
        if (!nf.omega_override) continue;
        INFO(nf.tag);
        OmegaEvaluator ev(nf.family);
        for (auto r : primes) REQUIRE((*nf.omega_override)(r) == ev.generic(r));
    }
}
