#include <doctest.h>

#include <cmath>

#include "bhc/bhc_integral.hpp"
#include "bhc/errors.hpp"
#include "bhc/group_catalog.hpp"
#include "oracle.hpp"

using namespace bhc;

namespace {

PolyFamily fam(std::initializer_list<const char*> ms) {
    std::vector<IntPolynomial> v;
    for (auto m : ms) v.push_back(IntPolynomial::parse(m));
    return PolyFamily(std::move(v));
}

// Integral over [lo, hi] of dt / prod ln f_i(t), with t = e^u.
double oracle_integral(const PolyFamily& f, double lo, double hi) {
    auto g = [&](double u) {
        const double t = std::exp(u);
        double prod = 1;
        for (const auto& m : f.members()) {
            double v = 0;
            const auto& c = m.coefficients();
            for (std::size_t i = c.size(); i-- > 0;) v = v * t + c[i].get_d();
            prod *= std::log(v);
        }
        return t / prod;
    };
    return oracle::simpson(g, std::log(lo), std::log(hi), 100'000);
}

} // namespace

TEST_CASE("li reference values") {
    CHECK(li(1e6) == doctest::Approx(78626.5039956820644).epsilon(1e-12));
    CHECK(li(1e9) == doctest::Approx(50849233.9118380179).epsilon(1e-12));
    CHECK(li(1e10) == doctest::Approx(455055613.541459295).epsilon(1e-12));
    CHECK(li(1e3) == doctest::Approx(176.564494210034734).epsilon(1e-12));
    CHECK(li(100) == doctest::Approx(29.0809778039621371).epsilon(1e-12));
    CHECK(li(1e30) == doctest::Approx(1.46923988977204476e28).epsilon(1e-11));
    CHECK(li(2) == 0.0);
    CHECK_THROWS_AS(li(1.5), DomainError);
}

TEST_CASE("li against a Simpson oracle and pi(1e6)") {
    const auto t = fam({"t"});
    for (double x : {10.0, 1e4, 1e6, 1e8}) CHECK(li(x) == doctest::Approx(oracle_integral(t, 2, x)).epsilon(1e-9));
    const double pi6 = static_cast<double>(prime_count(1'000'000));
    CHECK(pi6 == 78498);
    CHECK(std::abs(li(1e6) - pi6) / pi6 < 0.002);
}

TEST_CASE("family integrals against the oracle") {
    for (const char* spec : {"case-a", "case-c", "psu3:c", "projective:3,1", "half-plus:2", "m-primes:8"}) {
        NamedFamily nf = family_from_spec(spec);
        const double a = static_cast<double>(lower_limit(nf.family));
        INFO(spec);
        for (double x : {1e3, 1e6, 1e9})
            CHECK(integrate_family(nf.family, a, x) == doctest::Approx(oracle_integral(nf.family, a, x)).epsilon(1e-9));
    }
}

TEST_CASE("single member t equals li") {
    const auto t = fam({"t"});
    for (double x : {3.0, 1e5, 1e9, 1e12}) CHECK(bhc_integral(t, x).integral == doctest::Approx(li(x)).epsilon(1e-10));
    CHECK(log_power_integral(1, 1e7) == doctest::Approx(li(1e7)).epsilon(1e-10));
}

TEST_CASE("additivity, monotonicity, tolerance refinement") {
    const auto f = psu3_family(CaseLabel::A).family;
    const double whole = integrate_family(f, 2, 1e9);
    for (double m : {10.0, 12345.5, 1e6, 7e8})
        CHECK(integrate_family(f, 2, m) + integrate_family(f, m, 1e9) == doctest::Approx(whole).epsilon(1e-10));
    double prev = 0;
    for (double x = 3; x < 1e10; x *= 3.7) {
        const double v = bhc_integral(f, x).integral;
        CHECK(v > prev);
        prev = v;
    }
    const double loose = integrate_family(f, 2, 1e9, 1e-8), tight = integrate_family(f, 2, 1e9, 5e-9);
    CHECK(std::abs(loose - tight) <= 1e-7 * tight);
    CHECK(integrate_family(f, 2, 1e9, 1e-14) == doctest::Approx(whole).epsilon(1e-10));
}

TEST_CASE("lower limit") {
    CHECK(lower_limit(six_primes_family(CaseLabel::A).family) == 2);
    CHECK(lower_limit(six_primes_family(CaseLabel::C).family) == 2);
    CHECK(lower_limit(fam({"t-5"})) == 7);
    CHECK(lower_limit(fam({"t", "t^2-10"})) == 4);
    const auto a = fam({"t-5"});
    CHECK(bhc_integral(a, 7).integral == 0.0);
    CHECK_THROWS_AS(bhc_integral(a, 6.5), DomainError);
}

TEST_CASE("estimates with a supplied constant") {
    HLConstantResult c;
    c.value = 5.71649719;
    const auto d = six_primes_family(CaseLabel::D).family;
    const auto e = bhc_estimate(d, 1e9, c);
    CHECK(e.a == 2);
    CHECK(e.value == doctest::Approx(616720.51).epsilon(1e-6));
    CHECK(e.value == e.constant.value * e.integral);
    const auto m7 = m_primes_family(7).family;
    CHECK(bhc_estimate(m7, 1e9, c).value == doctest::Approx(556520.2).epsilon(1e-6));
    CHECK(bhc_estimate(d, 2, c).value == 0.0);
}

TEST_CASE("simplified estimate ignores coefficients") {
    const auto a = six_primes_family(CaseLabel::A).family;
    const double s = simplified_estimate(a, 1e9, 5.71649719);
    CHECK(s == doctest::Approx(5.71649719 * log_power_integral(3, 1e9)).epsilon(1e-14));
    const auto h = half_plus_family(1).family;
    CHECK(simplified_estimate(h, 1e6, 2.0) == doctest::Approx(log_power_integral(2, 1e6)).epsilon(1e-14));
    CHECK(log_power_integral(3, 1e9) > bhc_integral(a, 1e9).integral);
}
