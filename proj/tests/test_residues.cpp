#include <doctest.h>

#include <random>
#include <set>

#include "oracles.hpp"
#include "sievelab/errors.hpp"
#include "sievelab/experiments.hpp"
#include "sievelab/primes.hpp"
#include "sievelab/residues.hpp"

using namespace sievelab;

namespace {

ErrorKind kind_of(const std::vector<std::int64_t>& p, const std::vector<std::int64_t>& r,
                  std::optional<std::size_t>* index = nullptr) {
    try {
        validate_prefix(p, r);
    } catch (const SieveError& e) {
        if (index) *index = e.index();
        return e.kind();
    }
    FAIL("expected validation to fail");
    return ErrorKind::InvalidConfig;
}

}  // namespace

TEST_CASE("validate_prefix accepts the figure-1 sequence") {
    const std::vector<std::int64_t> p{3, 3, 5, 5, 7, 7, 11, 11};
    const std::vector<std::int64_t> r{1, 2, 4, 0, 5, 6, 7, 10};
    const auto prefix = validate_prefix(p, r);
    CHECK(prefix.size() == 8);
    CHECK(prefix.prime(6) == 11);
    CHECK(prefix.residue(7) == 10);
    CHECK(prefix == figure1_prefix());
}

TEST_CASE("validate_prefix reports each violated constraint with its index") {
    std::optional<std::size_t> idx;
    CHECK(kind_of({3, 3, 3}, {0, 1, 2}, &idx) == ErrorKind::TooManyClassesForPrime);
    CHECK(idx == 2u);
    CHECK(kind_of({5, 5}, {2, 2}, &idx) == ErrorKind::DuplicateClass);
    CHECK(idx == 1u);
    CHECK(kind_of({3, 4}, {0, 0}, &idx) == ErrorKind::NonPrimeModulus);
    CHECK(idx == 1u);
    CHECK(kind_of({5, 3}, {0, 0}, &idx) == ErrorKind::NotNonDecreasing);
    CHECK(idx == 1u);
    CHECK(kind_of({3}, {3}, &idx) == ErrorKind::ResidueOutOfRange);
    CHECK(idx == 0u);
    CHECK(kind_of({3}, {-1}) == ErrorKind::ResidueOutOfRange);
    CHECK(kind_of({3, 5}, {0}) == ErrorKind::LengthMismatch);
    CHECK(kind_of({1}, {0}) == ErrorKind::NonPrimeModulus);
    CHECK(validate_prefix(std::vector<std::int64_t>{}, std::vector<std::int64_t>{}).empty());
}

TEST_CASE("the first failing position wins") {
    std::optional<std::size_t> idx;
    CHECK(kind_of({3, 3, 2, 9}, {0, 0, 5, 0}, &idx) == ErrorKind::DuplicateClass);
    CHECK(idx == 1u);
}

TEST_CASE("model_contains") {
    const auto fig = figure1_prefix();
    CHECK_FALSE(model_contains(fig, 7, 21));
    CHECK(model_contains(fig, 1, 7));
    CHECK(model_contains(fig, 1, Integer(7)));
    CHECK(model_contains(fig, 3, make_integer(-2)));
    for (std::size_t n = 1; n <= fig.size(); ++n) {
        CHECK(model_contains(fig, n, static_cast<std::int64_t>(fig.residue(0))));
    }
    CHECK_THROWS_AS(model_contains(fig, 9, 0), SieveError);
}

TEST_CASE("model_contains agrees with the brute-force oracle and is monotone in n") {
    const auto fig = figure1_prefix();
    std::vector<oracle::Cls> cls;
    for (const auto& c : fig.classes()) cls.push_back({(std::int64_t)c.residue, (std::int64_t)c.modulus});
    for (std::int64_t z = -200; z <= 200; ++z) {
        bool prev = false;
        for (std::size_t n = 0; n <= fig.size(); ++n) {
            const bool in = n == 0 ? false : model_contains(fig, n, z);
            CHECK(in == oracle::sieved(cls, n, z));
            CHECK((!prev || in));
            prev = in;
        }
        // periodic with the product of distinct primes
        CHECK(model_contains(fig, 8, z) == model_contains(fig, 8, z + 1155));
    }
}

TEST_CASE("regular_prime_at") {
    CHECK(regular_prime_at(RegularParams(2, 2), 1) == 3);
    CHECK(regular_prime_at(RegularParams(2, 2), 3) == 5);
    CHECK(regular_prime_at(RegularParams(1, 1), 4) == 7);
    CHECK(regular_prime_at(RegularParams(4, 3), 7) == static_cast<std::uint64_t>(oracle::nth_prime(6)));
    for (std::size_t a = 1; a <= 5; ++a) {
        for (std::size_t k = 1; k < nth_prime(a); ++k) {
            for (std::size_t i = 1; i <= 30; ++i) {
                const int expect = static_cast<int>(a + (i + k - 1) / k - 1);
                CHECK(regular_prime_at(RegularParams(a, k), i) ==
                      static_cast<std::uint64_t>(oracle::nth_prime(expect)));
            }
        }
    }
}

TEST_CASE("RegularParams rejects invalid pairs") {
    CHECK_THROWS_AS(RegularParams(0, 1), SieveError);
    CHECK_THROWS_AS(RegularParams(1, 2), SieveError);
    CHECK_THROWS_AS(RegularParams(2, 0), SieveError);
    CHECK_THROWS_AS(RegularParams(3, 5), SieveError);
    CHECK_NOTHROW(RegularParams(3, 4));
    try {
        RegularParams(1, 2);
    } catch (const SieveError& e) {
        CHECK(e.kind() == ErrorKind::InvalidRegularParams);
    }
}

TEST_CASE("random_regular_prefix is valid, seeded and uses distinct residues per prime") {
    for (auto [a, k] : {std::pair{2, 1}, {2, 2}, {4, 3}, {3, 4}}) {
        const RegularParams params(a, k);
        for (std::uint64_t seed : {0ull, 1ull, 42ull, 0xdeadbeefull}) {
            const auto p1 = random_regular_prefix(params, 60, seed);
            const auto p2 = random_regular_prefix(params, 60, seed);
            CHECK(p1 == p2);
            REQUIRE(p1.size() == 60);
            std::vector<std::int64_t> ps, rs;
            for (std::size_t i = 0; i < p1.size(); ++i) {
                CHECK(p1.prime(i) == regular_prime_at(params, i + 1));
                ps.push_back((std::int64_t)p1.prime(i));
                rs.push_back((std::int64_t)p1.residue(i));
            }
            CHECK_NOTHROW(validate_prefix(ps, rs));
            const auto inferred = infer_regular_params(p1);
            REQUIRE(inferred.has_value());
            CHECK(*inferred == params);
        }
    }
    CHECK_FALSE(random_regular_prefix(RegularParams(2, 2), 40, 1) ==
                random_regular_prefix(RegularParams(2, 2), 40, 2));
}

TEST_CASE("random residues cover the admissible choices") {
    // With kappa = 1 every residue mod 3 must eventually appear as r_1.
    std::set<std::uint64_t> seen;
    for (std::uint64_t seed = 0; seed < 64; ++seed) {
        seen.insert(random_regular_prefix(RegularParams(2, 1), 1, seed).residue(0));
    }
    CHECK(seen.size() == 3);
}

TEST_CASE("infer_regular_params") {
    CHECK(infer_regular_params(figure1_prefix()) == RegularParams(2, 2));
    const std::vector<std::int64_t> p{3, 5, 5};
    const std::vector<std::int64_t> r{0, 0, 1};
    CHECK_FALSE(infer_regular_params(validate_prefix(p, r)).has_value());
}

TEST_CASE("primes_oracle against trial division") {
    CHECK(primes_oracle(13) == std::vector<std::uint64_t>{2, 3, 5, 7, 11, 13});
    CHECK(primes_oracle(2) == std::vector<std::uint64_t>{2});
    const auto p168 = primes_oracle(168);
    CHECK(p168.size() == 39);
    CHECK(p168.back() == 167);
    const auto ref = oracle::primes_upto(20000);
    const auto got = primes_oracle(20000);
    REQUIRE(got.size() == ref.size());
    for (std::size_t i = 0; i < ref.size(); ++i) CHECK(got[i] == (std::uint64_t)ref[i]);
    for (std::size_t i = 1; i <= 50; ++i) CHECK(nth_prime(i) == (std::uint64_t)oracle::nth_prime((int)i));
    CHECK(prime_index(13) == 6);
    CHECK(is_prime(Integer("170141183460469231731687303715884105727")));
    CHECK_FALSE(is_prime(Integer("170141183460469231731687303715884105729")));
    std::mt19937_64 rng(7);
    for (int i = 0; i < 200; ++i) {
        const std::int64_t n = static_cast<std::int64_t>(rng() % 4'000'000'000ull);
        CHECK(is_prime(static_cast<std::uint64_t>(n)) == oracle::is_prime(n));
    }
}
