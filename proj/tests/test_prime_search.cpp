#include <doctest.h>

#include <filesystem>
#include <sstream>

#include "bhc/errors.hpp"
#include "bhc/group_catalog.hpp"
#include "bhc/prime_search.hpp"
#include "oracle.hpp"

using namespace bhc;

namespace {

PolyFamily fam(std::initializer_list<const char*> ms) {
    std::vector<IntPolynomial> v;
    for (auto m : ms) v.push_back(IntPolynomial::parse(m));
    return PolyFamily(std::move(v));
}

SearchConfig cfg(std::uint64_t seg = std::uint64_t{1} << 22, unsigned threads = 1) {
    SearchConfig c;
    c.segment_length = seg;
    c.thread_count = threads;
    return c;
}

} // namespace

TEST_CASE("case (a) small counts") {
    const auto a = six_primes_family(CaseLabel::A).family;
    CHECK(count_simultaneous_primes(a, 30).count == 3);
    SearchConfig c;
    c.collect_hits = true;
    auto r = count_simultaneous_primes(a, 100, c);
    CHECK(r.count == 4);
    CHECK(*r.hits == std::vector<std::uint64_t>{2, 14, 26, 54});
    CHECK(r.complete);
    CHECK(r.x == 100);
    CHECK(r.family_digest == a.digest());
    CHECK(count_simultaneous_primes(a, 1).count == 0);
    CHECK(count_simultaneous_primes(a, 2).count == 1);
}

TEST_CASE("every catalog family matches the naive oracle to 1e5") {
    for (const auto& nf : catalog()) {
        const auto want = oracle::hits(nf.family, 100'000);
        SearchConfig c;
        c.collect_hits = true;
        c.segment_length = 1 << 14;
        auto got = count_simultaneous_primes(nf.family, 100'000, c);
        INFO(nf.tag);
        CHECK(got.count == want.size());
        CHECK(*got.hits == want);
    }
}

TEST_CASE("segmentation and threads do not change the count") {
    for (const char* spec : {"case-a", "psu3:c", "projective:3,1"}) {
        const auto f = family_from_spec(spec).family;
        const std::uint64_t x = 3'000'000;
        const auto ref = count_simultaneous_primes(f, x, cfg(std::uint64_t{1} << 22, 1)).count;
        INFO(spec);
        for (std::uint64_t seg : {std::uint64_t{1} << 10, std::uint64_t{1} << 16, std::uint64_t{1} << 22})
            for (unsigned th : {1u, 4u, 8u}) CHECK(count_simultaneous_primes(f, x, cfg(seg, th)).count == ref);
    }
}

TEST_CASE("monotone and additive in x") {
    const auto f = six_primes_family(CaseLabel::D).family;
    SearchConfig c;
    c.collect_hits = true;
    const auto full = count_simultaneous_primes(f, 2'000'000, c);
    std::uint64_t prev = 0;
    for (std::uint64_t x = 1; x <= 2'000'000; x = x * 3 + 7) {
        const auto q = count_simultaneous_primes(f, x).count;
        CHECK(q >= prev);
        const auto below =
            static_cast<std::uint64_t>(std::upper_bound(full.hits->begin(), full.hits->end(), x) - full.hits->begin());
        CHECK(q == below);
        prev = q;
    }
    std::uint64_t per_segment = 0;
    for (auto s : full.segment_counts) per_segment += s;
    CHECK(per_segment == full.count);
}

TEST_CASE("hits are prime at every member") {
    for (const char* spec : {"psu3:a", "half-plus:3", "m-primes:8", "unitary:5,1"}) {
        const auto f = family_from_spec(spec).family;
        SearchConfig c;
        c.collect_hits = true;
        auto r = count_simultaneous_primes(f, 500'000, c);
        REQUIRE(r.hits->size() == r.count);
        for (auto t : *r.hits) {
            REQUIRE(t <= 500'000);
            for (const auto& m : f.members()) REQUIRE(oracle::prime(oracle::eval(m, t)));
        }
        CHECK(std::is_sorted(r.hits->begin(), r.hits->end()));
    }
}

TEST_CASE("sieve bound changes only the survivor rate") {
    const auto f = psu3_family(CaseLabel::C).family;
    const auto ref = count_simultaneous_primes(f, 1'000'000).count;
    for (std::uint64_t b : {2ULL, 17ULL, 100ULL, 10'000ULL, 1'000'000ULL}) {
        SearchConfig c;
        c.sieve_prime_bound = b;
        CHECK(count_simultaneous_primes(f, 1'000'000, c).count == ref);
    }
    // a member equal to a sieving prime must survive
    const auto sg = sophie_germain_family().family;
    SearchConfig big;
    big.sieve_prime_bound = 1'000'000;
    CHECK(count_simultaneous_primes(sg, 1000, big).count == oracle::hits(sg, 1000).size());
}

TEST_CASE("sieve_segment against trial division") {
    const auto a = six_primes_family(CaseLabel::A).family;
    const auto table = sieve_primes(50);
    auto bm = sieve_segment(a, 1, 100, table);
    REQUIRE(bm.size() == 99);
    for (std::uint64_t t = 1; t < 100; ++t) {
        bool keep = true;
        for (const auto& m : a.members()) {
            const auto v = oracle::eval(m, t).get_ui();
            for (auto r : table)
                if (v % r == 0 && r < v) keep = false;
        }
        REQUIRE(bm.test(t) == keep);
    }

    const auto t = fam({"t"});
    auto bt = sieve_segment(t, 2, 10'000, sieve_primes(100));
    std::size_t primes = 0;
    for (auto s : bt.survivors()) primes += oracle::trial_prime(s);
    CHECK(primes == 1229);
    CHECK(bt.count() == bt.survivors().size());

    CHECK(sieve_segment(a, 5, 5, table).empty());
    CHECK_THROWS_AS(sieve_segment(a, 0, 10, table), DomainError);
    CHECK_THROWS_AS(sieve_segment(fam({"t-5"}), 1, 10, table), DomainError);
}

TEST_CASE("non-positive members are rejected") {
    CHECK_THROWS_AS(count_simultaneous_primes(fam({"t-5"}), 100), DomainError);
    CHECK_THROWS_AS(count_simultaneous_primes(fam({"t", "t^2-10t+20"}), 100), DomainError);
    CHECK_NOTHROW(count_simultaneous_primes(fam({"t", "t^2-10t+30"}), 100));
    CHECK_THROWS_AS(count_simultaneous_primes(fam({"t"}), 0), DomainError);
}

TEST_CASE("config validation") {
    SearchConfig c;
    c.segment_length = 100;
    CHECK_THROWS_AS(c.validate(), DomainError);
    c = SearchConfig{};
    c.sieve_prime_bound = 1;
    CHECK_THROWS_AS(c.validate(), DomainError);
    c = SearchConfig{};
    CHECK_NOTHROW(c.validate());
}

TEST_CASE("checkpoint resume") {
    const auto f = six_primes_family(CaseLabel::C).family;
    const std::uint64_t x = 5'000'000;
    const auto ref = count_simultaneous_primes(f, x).count;

    const auto path = std::filesystem::temp_directory_path() / "bhc_test_search_ckpt.json";
    std::filesystem::remove(path);
    SearchConfig c = cfg(1 << 14, 2);
    c.checkpoint_path = path;
    int polls = 0;
    c.interrupt = [&] { return ++polls > 7; };
    auto part = count_simultaneous_primes(f, x, c);
    CHECK_FALSE(part.complete);
    CHECK(part.next_start > 1);
    CHECK(part.next_start <= x);
    CHECK(part.count == count_simultaneous_primes(f, part.next_start - 1).count);

    c.interrupt = nullptr;
    auto rest = count_simultaneous_primes(f, x, c);
    CHECK(rest.complete);
    CHECK(rest.resumed_from == part.next_start);
    CHECK(rest.count == ref);

    // finished checkpoint: nothing left to do
    auto again = count_simultaneous_primes(f, x, c);
    CHECK(again.count == ref);
    CHECK(again.segments_done == 0);
    std::filesystem::remove(path);
}

TEST_CASE("time limit and stop flag end the run early") {
    const auto f = six_primes_family(CaseLabel::A).family;
    SearchConfig c;
    c.time_limit = std::chrono::milliseconds(0);
    CHECK_FALSE(count_simultaneous_primes(f, 10'000'000, c).complete);
    std::atomic<bool> stop{true};
    SearchConfig s;
    s.stop = &stop;
    auto r = count_simultaneous_primes(f, 10'000'000, s);
    CHECK_FALSE(r.complete);
    CHECK(r.count == 0);
}

TEST_CASE("relative error") {
    CHECK(relative_error(614423, 615580.70) == doctest::Approx(0.188).epsilon(0.003));
    CHECK(relative_error(30452, 30504.71) == doctest::Approx(0.173).epsilon(0.003));
    CHECK(relative_error(100, 100.0) == 0.0);
    CHECK(relative_error(100, 99.0) < 0);
    CHECK_THROWS_AS(relative_error(0, 1.0), DomainError);
}

TEST_CASE("hits CSV") {
    const auto a = six_primes_family(CaseLabel::A).family;
    std::ostringstream os;
    std::vector<std::uint64_t> hits{2, 14};
    write_hits_csv(os, a, hits);
    CHECK(os.str() == "t,f1,f2,f3\n2,29,7,5\n14,173,43,29\n");
}
