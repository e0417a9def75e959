#include <doctest.h>

#include <random>
#include <vector>

#include "sievelab/simd/kernels.hpp"

using namespace sievelab::simd;

namespace {

std::vector<Isa> available() {
    std::vector<Isa> out{Isa::scalar};
    if (isa_available(Isa::avx2)) out.push_back(Isa::avx2);
    return out;
}

std::vector<std::uint8_t> random_mask(std::mt19937_64& rng, std::size_t n, unsigned density) {
    std::vector<std::uint8_t> v(n);
    for (auto& b : v) b = (rng() % 1000) < density ? 1 : 0;
    return v;
}

}  // namespace

TEST_CASE("kernel table names") {
    CHECK(isa_name(Isa::scalar) == "scalar");
    CHECK(kernels_for(Isa::scalar).isa == Isa::scalar);
    CHECK(isa_available(kernels().isa));
}

TEST_CASE("every ISA variant matches the scalar reference") {
    std::mt19937_64 rng(11);
    const auto& ref = kernels_for(Isa::scalar);
    for (Isa isa : available()) {
        const auto& k = kernels_for(isa);
        CAPTURE(isa_name(isa));
        for (int trial = 0; trial < 400; ++trial) {
            const std::size_t n = trial < 100 ? trial : rng() % 5000;
            const std::size_t skew = rng() % 32;
            const unsigned density = trial % 3 == 0 ? 2 : (trial % 3 == 1 ? 500 : 998);
            auto a = random_mask(rng, n + skew, density);
            auto b = random_mask(rng, n + skew, density);
            const std::uint8_t* pa = a.data() + skew;

            CHECK(k.count_nonzero(pa, n) == ref.count_nonzero(pa, n));
            CHECK(k.find_nonzero(pa, n) == ref.find_nonzero(pa, n));
            CHECK(k.rfind_nonzero(pa, n) == ref.rfind_nonzero(pa, n));

            auto x = a, y = a;
            k.and_into(x.data() + skew, b.data() + skew, n);
            ref.and_into(y.data() + skew, b.data() + skew, n);
            CHECK(x == y);
        }
    }
}

TEST_CASE("scalar reference semantics") {
    const auto& k = kernels_for(Isa::scalar);
    std::vector<std::uint8_t> v{0, 0, 1, 0, 1, 0};
    CHECK(k.count_nonzero(v.data(), v.size()) == 2);
    CHECK(k.find_nonzero(v.data(), v.size()) == 2);
    CHECK(k.rfind_nonzero(v.data(), v.size()) == 4);
    std::vector<std::uint8_t> z(70, 0);
    CHECK(k.find_nonzero(z.data(), z.size()) == z.size());
    CHECK(k.rfind_nonzero(z.data(), z.size()) == z.size());
    CHECK(k.find_nonzero(z.data(), 0) == 0);
}
