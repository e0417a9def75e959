#include <doctest.h>

#include <random>
#include <set>

#include "oracles.hpp"
#include "sievelab/errors.hpp"
#include "sievelab/primes.hpp"
#include "sievelab/tuples.hpp"

using namespace sievelab;

namespace {

ErrorKind error_of(auto&& fn) {
    try {
        fn();
    } catch (const SieveError& e) {
        return e.kind();
    }
    FAIL("expected a SieveError");
    return ErrorKind::InvalidConfig;
}

std::vector<std::int64_t> ints(const std::vector<Integer>& v) {
    std::vector<std::int64_t> out;
    for (const auto& x : v) out.push_back(x.get_si());
    return out;
}

std::vector<std::int64_t> random_admissible(std::mt19937_64& rng) {
    for (;;) {
        const std::size_t k = 1 + rng() % 4;
        std::set<std::int64_t> s{0};
        while (s.size() < k) s.insert(static_cast<std::int64_t>(rng() % 13));
        std::vector<std::int64_t> v(s.begin(), s.end());
        if (oracle::admissible(v)) return v;
    }
}

}  // namespace

TEST_CASE("KTuple parsing and validation") {
    CHECK(parse_tuple("0,2,6").offsets() == std::vector<std::int64_t>{0, 2, 6});
    CHECK(parse_tuple(" 0, 4 ").diameter() == 4);
    CHECK(error_of([] { KTuple({0, 0}); }) == ErrorKind::InvalidTuple);
    CHECK(error_of([] { KTuple({2, 1}); }) == ErrorKind::InvalidTuple);
    CHECK(error_of([] { KTuple({}); }) == ErrorKind::InvalidTuple);
    CHECK(error_of([] { parse_tuple("0,x"); }) == ErrorKind::InvalidTuple);
}

TEST_CASE("is_admissible") {
    CHECK(is_admissible(KTuple({0, 2, 6})));
    CHECK_FALSE(is_admissible(KTuple({0, 2, 4})));
    CHECK(is_admissible(KTuple({0})));
    CHECK_FALSE(is_admissible(KTuple({0, 1})));
    std::mt19937_64 rng(1);
    for (int i = 0; i < 300; ++i) {
        std::set<std::int64_t> s;
        const std::size_t k = 1 + rng() % 6;
        while (s.size() < k) s.insert(static_cast<std::int64_t>(rng() % 30) - 10);
        std::vector<std::int64_t> v(s.begin(), s.end());
        CHECK(is_admissible(KTuple(v)) == oracle::admissible(v));
    }
}

TEST_CASE("matching_positions") {
    const KTuple t({0, 2, 6});
    const Pattern e3 = eratosthenes_pattern(3);
    CHECK(ints(matching_positions(t, e3, Integer(0), Integer(29))) == std::vector<std::int64_t>{11, 17});
    CHECK(ints(matching_positions(t, e3, Integer(0), Integer(61))) == std::vector<std::int64_t>{11, 17, 41, 47});
    CHECK(ints(matching_positions(KTuple({0}), Pattern(eratosthenes_prefix(1), 0), Integer(5), Integer(7))) ==
          std::vector<std::int64_t>{5, 6, 7});
    // periodic modulo 30, checked against the definition
    const auto far = matching_positions(t, e3, Integer(30000), Integer(30029));
    CHECK(ints(far) == std::vector<std::int64_t>{30011, 30017});
    const auto wide = matching_positions(t, eratosthenes_pattern(5), Integer(-3000), Integer(3000));
    std::vector<std::int64_t> expect;
    for (std::int64_t m = -3000; m <= 3000; ++m) {
        bool ok = true;
        for (auto a : {0, 2, 6}) {
            for (auto p : {2, 3, 5, 7, 11}) ok = ok && oracle::fmod_(m + a, p) != 0;
        }
        if (ok) expect.push_back(m);
    }
    CHECK(ints(wide) == expect);
}

TEST_CASE("choose_anchor") {
    const KTuple t({0, 2, 6});
    const auto a = choose_anchor(t);
    CHECK(a.d() == 4);
    CHECK(a.m() == 11);
    CHECK(a.primorial() == 30);
    CHECK(choose_anchor(t, std::nullopt, Integer(17)).m() == 17);
    const auto b = choose_anchor(KTuple({0, 2}));
    CHECK(b.d() == 2);
    CHECK(b.m() == 1);
    const auto c = choose_anchor(KTuple({0}));
    CHECK(c.d() == 2);
    CHECK(c.m() == 1);

    CHECK(error_of([] { choose_anchor(KTuple({0, 2, 4})); }) == ErrorKind::NotAdmissible);
    CHECK(error_of([&] { choose_anchor(t, std::nullopt, Integer(13)); }) == ErrorKind::InvalidExplicitM);
    CHECK(error_of([&] { choose_anchor(t, std::nullopt, Integer(41)); }) == ErrorKind::InvalidExplicitM);
    CHECK(error_of([&] { choose_anchor(t, 3); }) == ErrorKind::InvalidAnchor);
    CHECK(error_of([&] { choose_anchor(t, 1); }) == ErrorKind::InvalidAnchor);
    // the only candidate m=1 puts the element at 2, which is even
    CHECK(error_of([] { choose_anchor(KTuple({1}), 2); }) == ErrorKind::NoMatchingPosition);
}

TEST_CASE("tuple_primorial_eval and reduce_to_regular on the guiding triple") {
    const auto a = choose_anchor(KTuple({0, 2, 6}), 4, Integer(17));
    CHECK(tuple_primorial_eval(a, 1, Integer(2)) == 0);
    CHECK(tuple_primorial_eval(a, 1, Integer(1)) == 1);
    CHECK(tuple_primorial_eval(a, 2, Integer(5)) == 0);

    const auto r1 = reduce_to_regular(a, 1);
    CHECK(r1.classes == std::vector<ResidueClass>{{3, 7}, {2, 7}, {0, 7}});
    const auto r2 = reduce_to_regular(a, 2);
    CHECK(r2.classes == std::vector<ResidueClass>{{3, 7}, {2, 7}, {0, 7}, {3, 11}, {0, 11}, {5, 11}});
    CHECK(r2.alpha == 4);
    CHECK(r2.kappa == 3);
    CHECK(reduced_classes_json(r2).dump() ==
          R"({"alpha":4,"kappa":3,"classes":[{"r":3,"p":7},{"r":2,"p":7},{"r":0,"p":7},{"r":3,"p":11},{"r":0,"p":11},{"r":5,"p":11}]})");

    const auto single = reduce_to_regular(choose_anchor(KTuple({0}), 2, Integer(1)), 1);
    CHECK(single.classes == std::vector<ResidueClass>{{2, 3}});
}

TEST_CASE("reduction is pointwise exact on random admissible tuples") {
    std::mt19937_64 rng(77);
    for (int trial = 0; trial < 40; ++trial) {
        const auto offs = random_admissible(rng);
        const auto anchor = choose_anchor(KTuple(offs));
        const std::size_t g = 1 + rng() % 4;
        const auto reduced = reduce_to_regular(anchor, g);
        const auto prefix = reduced.to_prefix();  // validates distinctness and ordering
        const Pattern pat(prefix);
        const std::int64_t T = fundamental_period(pat).get_si();
        const oracle::TuplePrimorial ref(offs, static_cast<int>(anchor.d()), anchor.m().get_si(),
                                         static_cast<int>(g));
        for (std::int64_t z = 1; z <= T; ++z) {
            const int expect = ref(z);
            REQUIRE(pattern_eval(pat, z) == expect);
            REQUIRE(tuple_primorial_eval(anchor, g, Integer(z)) == expect);
        }
    }
}

TEST_CASE("mu map") {
    const auto a = choose_anchor(KTuple({0, 2, 6}), 4, Integer(17));
    CHECK(mu_map(a, Integer(1)) == 17);
    CHECK(mu_map(a, Integer(5)) == 137);
    CHECK(mu_inverse(a, Integer(47)) == 2);
    CHECK(error_of([&] { mu_inverse(a, Integer(48)); }) == ErrorKind::NotInResidueClass);
    for (std::int64_t z = -50; z <= 50; ++z) CHECK(mu_inverse(a, mu_map(a, Integer(z))) == z);
}

TEST_CASE("z_window") {
    const auto a = choose_anchor(KTuple({0, 2, 6}), 4, Integer(17));
    const auto w2 = z_window(a, 2);
    REQUIRE(w2.has_value());
    CHECK(w2->lo == 1);
    CHECK(w2->hi == 5);
    const auto w1 = z_window(a, 1);
    REQUIRE(w1.has_value());
    CHECK(w1->hi == 3);
    CHECK(mu_map(a, Integer(3)) + 6 <= 120);
    CHECK_FALSE(z_window(a, 1, Integer(4)).has_value());
}

TEST_CASE("survivors") {
    const auto a17 = choose_anchor(KTuple({0, 2, 6}), 4, Integer(17));
    // brute force: z in [1,5], drop z hit by any of the six classes, keep full-window triples
    std::vector<SurvivorRow> expect;
    for (std::int64_t z = 1; z <= 5; ++z) {
        if (!oracle::tuple_primorial({0, 2, 6}, 4, 17, 2, z)) continue;
        const std::int64_t pos = 17 + (z - 1) * 30;
        if (pos + 6 > 168) continue;
        expect.push_back({Integer(z), Integer(pos),
                          oracle::is_prime(pos) && oracle::is_prime(pos + 2) && oracle::is_prime(pos + 6)});
    }
    const auto got = survivors(a17, 2);
    CHECK(got == expect);
    CHECK(got == std::vector<SurvivorRow>{{Integer(1), Integer(17), true}, {Integer(4), Integer(107), true}});

    for (std::int64_t m : {11, 17}) {
        const auto a = choose_anchor(KTuple({0, 2, 6}), 4, Integer(m));
        for (std::size_t n = 1; n <= 8; ++n) {
            for (const auto& row : survivors(a, n)) {
                CHECK(row.all_prime);
                const auto p = row.position.get_si();
                CHECK((oracle::is_prime(p) && oracle::is_prime(p + 2) && oracle::is_prime(p + 6)));
            }
        }
    }
    const auto single = choose_anchor(KTuple({0}), 2, Integer(1));
    for (const auto& row : survivors(single, 6)) CHECK(oracle::is_prime(row.position.get_si()));
}
